#pragma once

// Refinement of the splitting chain by the merging chain: the full Schreier
// matrix, its triangular controllable form, the delta chain and the quotient
// cells between consecutive entries of a column.

#include <string>
#include <vector>

#include "gtrellis/trellis.hpp"

namespace gtrellis {

struct CheckResult {
  bool ok = true;
  std::string failure;
  std::vector<std::string> warnings;

  static CheckResult fail(std::string why) { return {false, std::move(why), {}}; }
  explicit operator bool() const noexcept { return ok; }
};

/// Cell (j, i) = X_{j-1}(X_j ∩ Y_i) for columns j = 0..ell and rows i = -1..ell.
class SchreierMatrix {
 public:
  int ell() const noexcept { return ell_; }
  const Subgroup& cell(int j, int i) const;

 private:
  friend SchreierMatrix schreier_matrix(const TrellisSection&, const Chains&);
  int ell_ = 0;
  std::vector<std::vector<Subgroup>> cells_;  // cells_[j][i + 1]
};

/// Throws Inconsistent if the bottom/top rows differ from the chain or a cell is not normal.
SchreierMatrix schreier_matrix(const TrellisSection& t, const Chains& c);

/// Cell (j, k) = X_{j-1}(X_j ∩ Y_{k-j}) for 0 <= j <= k <= ell, and cell(j, j-1) = X_{j-1}.
class ControllableMatrix {
 public:
  int ell() const noexcept { return ell_; }
  /// Also accepts k == j - 1 (returns X_{j-1}) and j == ell + 1 (returns the whole group).
  const Subgroup& cell(int j, int k) const;
  /// Copy with one cell replaced, for negative tests.
  ControllableMatrix with_cell(int j, int k, Subgroup replacement) const;

 private:
  friend ControllableMatrix controllable_matrix(const TrellisSection&, const Chains&);
  friend ControllableMatrix dual_controllable_matrix(const TrellisSection&, const Chains&);
  int ell_ = 0;
  std::vector<Subgroup> below_;                // below_[j] = X_{j-1}, j = 0..ell+1
  std::vector<std::vector<Subgroup>> cells_;   // cells_[j][k - j]
};

/// Throws DiagonalIdentityFailed if cell(j, ell) != X_j for some j.
ControllableMatrix controllable_matrix(const TrellisSection& t, const Chains& c);
/// Same layout with the roles of the two chains exchanged: Y_{j-1}(Y_j ∩ X_{k-j}).
ControllableMatrix dual_controllable_matrix(const TrellisSection& t, const Chains& c);

/// N(cell(j, k)) == cell(j+1, k) for every cell; failure names the first (j, k).
CheckResult verify_shift_property(const TrellisSection& t, const ControllableMatrix& m);

/// Ascending normal chain read column by column, bottom to top, from the trivial group to B.
std::vector<Subgroup> normal_chain_reading(const ControllableMatrix& m);
CheckResult verify_normal_chain(const TrellisSection& t, const ControllableMatrix& m);

/// [Δ_{-1}, Δ_0, ..., Δ_ell] with Δ_k = X_0 ∩ Y_k.
std::vector<Subgroup> delta_chain(const Chains& c);
/// Δ'_k = Y_0 ∩ X_k.
std::vector<Subgroup> reversed_delta_chain(const Chains& c);

/// Applies next_of_set `times` times.
ElementSet iterate_next(const TrellisSection& t, std::span<const Element> set, int times);
/// cell(j, k) is generated from Δ_k by j forward steps.
CheckResult verify_cell_generation(const TrellisSection& t, const Chains& c, const ControllableMatrix& m);

/// Quotient of a subgroup of B by a smaller normal subgroup, built on the induced group.
struct CellQuotient {
  Subgroup upper;
  Subgroup lower;
  InducedGroup induced;
  QuotientGroup quotient;

  std::size_t order() const { return quotient.order(); }
  /// Coset label of a branch of `upper`.
  std::size_t label_of(Element b) const { return quotient.project(induced.from_parent(b)); }
};

CellQuotient cell_quotient(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower);

/// Q_{j,k} = cell(j, k) / cell(j, k-1).
class QuotientCells {
 public:
  int ell() const noexcept { return ell_; }
  const CellQuotient& at(int j, int k) const;
  std::size_t order(int j, int k) const { return at(j, k).order(); }

 private:
  friend QuotientCells quotient_cells(const TrellisSection&, const ControllableMatrix&);
  int ell_ = 0;
  std::vector<std::vector<CellQuotient>> q_;  // q_[j][k - j]
};

QuotientCells quotient_cells(const TrellisSection& t, const ControllableMatrix& m);

/// Groups of order above the isomorphism cap are compared by order only, with a warning.
CheckResult check_isomorphic(const FiniteGroup& a, const FiniteGroup& b, const std::string& what);

/// Row-wise: Q_{0,k}, ..., Q_{k,k} pairwise isomorphic.
CheckResult verify_row_isomorphism(const QuotientCells& q);

struct ControllableStructure {
  TrellisSection section;
  Chains chains;
  ControllableMatrix matrix;
  QuotientCells cells;
  std::vector<Subgroup> deltas;  // Δ_{-1}..Δ_ell at index k + 1

  int ell() const noexcept { return chains.ell(); }
  const FiniteGroup& group() const noexcept { return section.group(); }
  const Subgroup& delta(int k) const { return deltas.at(static_cast<std::size_t>(k + 1)); }
};

ControllableStructure analyze_section(TrellisSection t);

/// For each k and j <= k: Δ_k/Δ_{k-1}, the path quotient over [0, k], and Q_{j,k} are isomorphic.
CheckResult verify_rectangle(const ControllableStructure& s);

/// Q_{j,k} ≅ (X_j ∩ Y_{k-j}) / ((X_j ∩ Y_{k-j-1})(X_{j-1} ∩ Y_{k-j})), with the explicit coset map checked.
CheckResult verify_zassenhaus_form(const ControllableStructure& s);

std::string render_schreier(const SchreierMatrix& m);
std::string render_controllable(const ControllableMatrix& m);

}  // namespace gtrellis
