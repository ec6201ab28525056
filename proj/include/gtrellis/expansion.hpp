#pragma once

// Expansion of group elements along a normal chain and the twisted product
// that makes expansion classes a group.

#include <vector>

#include "gtrellis/group.hpp"
#include "gtrellis/schreier.hpp"

namespace gtrellis {

/// 1 = N_{-1} ⊆ N_0 ⊆ ... ⊆ N_ell = G, every entry normal in G.
class NormalChain {
 public:
  /// `levels` lists N_0..N_ell. Throws NotNormal, NotASubgroup or Malformed.
  static NormalChain make(FiniteGroup g, std::vector<ElementSet> levels);

  const FiniteGroup& group() const noexcept { return g_; }
  int ell() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  /// Accepts -1 (trivial).
  const Subgroup& level(int j) const;

 private:
  FiniteGroup g_ = trivial_group();
  std::vector<Subgroup> levels_;
  Subgroup trivial_;
};

/// Per level j, one representative per coset of N_{j-1} in N_j; the identity represents N_{j-1}.
struct ExpansionBasis {
  std::vector<std::vector<Element>> reps;
  std::vector<std::vector<std::size_t>> label_of;  // label_of[j][g] for g in N_j
};

ExpansionBasis make_basis(const NormalChain& chain, const RepresentativeChooser& chooser = {});

using ExpansionVector = std::vector<Element>;

/// Left-to-right product x_0 x_1 ... x_ell; the one place products of a vector are formed.
Element contract(const FiniteGroup& g, std::span<const Element> x);

/// x_ell represents N_{ell-1} g, then recurse on g x_ell^{-1}.
ExpansionVector expand(const NormalChain& chain, const ExpansionBasis& basis, Element g);

/// x_j ∈ N_j for every j and contract(x) == g.
bool in_expansion_class(const NormalChain& chain, std::span<const Element> x, Element g);

/// Component j is x_j · t x̄_j t^{-1}, t = x_{j+1} ... x_ell. Throws MembershipViolation.
ExpansionVector otimes(const NormalChain& chain, std::span<const Element> x, std::span<const Element> xbar);

/// Every vector with x_j ∈ N_j and product g. Throws TooLarge past `cap` vectors per class.
std::vector<ExpansionVector> expansion_class(const NormalChain& chain, Element g, std::size_t cap = 100000);

/// Closure, translation bijections, associativity on sampled triples, identity and inverses.
CheckResult verify_class_group(const NormalChain& chain, std::size_t order_cap = 64);

/// The splitting chain X_0 ⊆ ... ⊆ X_ell of a section as a normal chain of its branch group.
NormalChain splitting_normal_chain(const ControllableStructure& s);

}  // namespace gtrellis
