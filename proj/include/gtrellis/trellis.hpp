#pragma once

// Time-invariant group trellis sections, the splitting/merging chains and
// finite path segments.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtrellis/group.hpp"

namespace gtrellis {

struct Branch {
  Element s = 0;   // left state
  Element a = 0;   // label
  Element s2 = 0;  // right state
  friend auto operator<=>(const Branch&, const Branch&) = default;
};

class TrellisSection {
 public:
  const FiniteGroup& sigma() const noexcept { return sigma_; }
  const FiniteGroup& alphabet() const noexcept { return alphabet_; }
  /// Componentwise product on branch indices; branches are indexed in (s, a, s2) order.
  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return branches_.size(); }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  const Branch& branch(Element b) const { return branches_[b]; }
  Element left(Element b) const { return branches_[b].s; }
  Element right(Element b) const { return branches_[b].s2; }
  std::optional<Element> find(const Branch& b) const;
  Element index_of(const Branch& b) const;  // throws MembershipViolation
  const std::string& name() const noexcept { return name_; }

 private:
  friend TrellisSection build_section(FiniteGroup, FiniteGroup, std::vector<Branch>, std::string);
  TrellisSection(FiniteGroup sigma, FiniteGroup alphabet, std::vector<Branch> branches, std::string name);
  std::uint64_t key(const Branch& b) const;

  FiniteGroup sigma_;
  FiniteGroup alphabet_;
  std::vector<Branch> branches_;
  std::unordered_map<std::uint64_t, Element> lookup_;
  FiniteGroup group_;
  std::string name_;
};

/// Throws NotAGroup if the triples are not a subgroup of sigma x alphabet x sigma,
/// NotSubdirect naming the coordinate whose projection misses an element.
TrellisSection build_section(FiniteGroup sigma, FiniteGroup alphabet, std::vector<Branch> branches,
                             std::string name = {});

Subgroup splitting_kernel(const TrellisSection& t);  // branches leaving state 0
Subgroup merging_kernel(const TrellisSection& t);    // branches entering state 0

ElementSet left_states(const TrellisSection& t, std::span<const Element> set);
ElementSet right_states(const TrellisSection& t, std::span<const Element> set);

/// Branches that may follow b: a single coset of the splitting kernel.
ElementSet next_branch_set(const TrellisSection& t, Element b);
ElementSet previous_branch_set(const TrellisSection& t, Element b);
ElementSet next_of_set(const TrellisSection& t, std::span<const Element> set);
ElementSet prev_of_set(const TrellisSection& t, std::span<const Element> set);

class Chains {
 public:
  int ell() const noexcept { return ell_; }
  /// Index range -1..ell; indices above ell return the whole branch group.
  const Subgroup& x(int j) const;
  const Subgroup& y(int i) const;

 private:
  friend Chains compute_chains(const TrellisSection&);
  int ell_ = 1;
  std::vector<Subgroup> x_;  // x_[j + 1]
  std::vector<Subgroup> y_;
};

/// Throws NotControllable if the splitting chain stalls before reaching every state.
Chains compute_chains(const TrellisSection& t);

/// Branch-index sequence (b_0, ..., b_k).
using Path = std::vector<Element>;

struct PathSet {
  int k = 0;
  std::vector<Path> paths;  // sorted
  bool contains(const Path& p) const;
};

bool is_valid_path(const TrellisSection& t, std::span<const Element> path);

/// Paths (b_0..b_k) with b_0 leaving state 0, b_k entering state 0. Throws IndexOutOfRange unless 0 <= k <= ell.
PathSet enumerate_segment_paths(const TrellisSection& t, const Chains& c, int k);

/// All valid paths of length k+1 whose first branch lies in `start`.
PathSet paths_from(const TrellisSection& t, std::span<const Element> start, int k);

/// Set of j-th components of a path set.
ElementSet component_set(const PathSet& ps, int j);

struct Pletty {
  PathSet paths;                   // all length-(ell+1) paths leaving state 0
  std::vector<ElementSet> layers;  // layers[j] = j-th components
};

Pletty pletty(const TrellisSection& t, const Chains& c);

/// Branch (s, a, s2) becomes (s2, a, s).
TrellisSection reverse_section(const TrellisSection& t);

/// A path set that is closed under componentwise product, as a group.
/// Index i is the i-th path in sorted order, so the identity path is index 0.
class PathGroup {
 public:
  static constexpr std::size_t kDefaultCap = 2048;

  /// Throws NotAGroup if not closed, TooLarge above `cap`.
  static PathGroup from_paths(const TrellisSection& t, PathSet ps, std::size_t cap = kDefaultCap);

  const FiniteGroup& group() const noexcept { return group_; }
  const PathSet& paths() const noexcept { return paths_; }
  const Path& path(Element i) const { return paths_.paths[i]; }
  std::optional<Element> find(const Path& p) const;
  ElementSet indices_of(const PathSet& ps) const;  // throws MembershipViolation

 private:
  PathGroup(PathSet ps, FiniteGroup g) : paths_(std::move(ps)), group_(std::move(g)) {}
  PathSet paths_;
  FiniteGroup group_;
};

Path path_product(const TrellisSection& t, std::span<const Element> p, std::span<const Element> q);
Path path_inverse(const TrellisSection& t, std::span<const Element> p);

}  // namespace gtrellis
