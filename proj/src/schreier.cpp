#include "gtrellis/schreier.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gtrellis {

namespace {

std::string at_cell(int j, int k) { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

Subgroup cell_product(const FiniteGroup& g, const Subgroup& lower, const Subgroup& a, const Subgroup& b) {
  return subgroup_product(g, lower, intersect(a, b));
}

}  // namespace

const Subgroup& SchreierMatrix::cell(int j, int i) const {
  if (j < 0 || j > ell_ || i < -1 || i > ell_) throw Error(ErrorKind::IndexOutOfRange, "Schreier cell " + at_cell(j, i));
  return cells_[j][i + 1];
}

SchreierMatrix schreier_matrix(const TrellisSection& t, const Chains& c) {
  SchreierMatrix m;
  m.ell_ = c.ell();
  const auto& g = t.group();
  for (int j = 0; j <= c.ell(); ++j) {
    std::vector<Subgroup> column;
    for (int i = -1; i <= c.ell(); ++i) {
      Subgroup s = cell_product(g, c.x(j - 1), c.x(j), c.y(i));
      if (!is_normal(g, s)) throw Error(ErrorKind::Inconsistent, "Schreier cell " + at_cell(j, i) + " not normal");
      column.push_back(std::move(s));
    }
    if (column.front() != c.x(j - 1) || column.back() != c.x(j)) {
      throw Error(ErrorKind::Inconsistent, "column " + std::to_string(j) + " does not run from X_{j-1} to X_j");
    }
    m.cells_.push_back(std::move(column));
  }
  return m;
}

// ---------------------------------------------------------------------------

const Subgroup& ControllableMatrix::cell(int j, int k) const {
  if (j < 0 || j > ell_ + 1 || k > ell_ || k < j - 1) {
    throw Error(ErrorKind::IndexOutOfRange, "controllable cell " + at_cell(j, k));
  }
  if (k == j - 1) return below_[j];
  return cells_[j][k - j];
}

ControllableMatrix ControllableMatrix::with_cell(int j, int k, Subgroup replacement) const {
  if (j < 0 || j > ell_ || k < j || k > ell_) throw Error(ErrorKind::IndexOutOfRange, "controllable cell " + at_cell(j, k));
  ControllableMatrix copy = *this;
  copy.cells_[j][k - j] = std::move(replacement);
  return copy;
}

ControllableMatrix controllable_matrix(const TrellisSection& t, const Chains& c) {
  ControllableMatrix m;
  m.ell_ = c.ell();
  const auto& g = t.group();
  for (int j = 0; j <= c.ell() + 1; ++j) m.below_.push_back(c.x(j - 1));
  for (int j = 0; j <= c.ell(); ++j) {
    std::vector<Subgroup> column;
    for (int k = j; k <= c.ell(); ++k) column.push_back(cell_product(g, c.x(j - 1), c.x(j), c.y(k - j)));
    if (column.back() != c.x(j)) {
      throw Error(ErrorKind::DiagonalIdentityFailed, "X_{j-1}(X_j ∩ Y_{ell-j}) != X_j at j = " + std::to_string(j));
    }
    m.cells_.push_back(std::move(column));
  }
  return m;
}

ControllableMatrix dual_controllable_matrix(const TrellisSection& t, const Chains& c) {
  ControllableMatrix m;
  m.ell_ = c.ell();
  const auto& g = t.group();
  for (int j = 0; j <= c.ell() + 1; ++j) m.below_.push_back(c.y(j - 1));
  for (int j = 0; j <= c.ell(); ++j) {
    std::vector<Subgroup> column;
    for (int k = j; k <= c.ell(); ++k) column.push_back(cell_product(g, c.y(j - 1), c.y(j), c.x(k - j)));
    if (column.back() != c.y(j)) {
      throw Error(ErrorKind::DiagonalIdentityFailed, "Y_{j-1}(Y_j ∩ X_{ell-j}) != Y_j at j = " + std::to_string(j));
    }
    m.cells_.push_back(std::move(column));
  }
  return m;
}

CheckResult verify_shift_property(const TrellisSection& t, const ControllableMatrix& m) {
  for (int k = 0; k <= m.ell(); ++k) {
    for (int j = 0; j <= k; ++j) {
      if (next_of_set(t, m.cell(j, k).elements()) != m.cell(j + 1, k).elements()) {
        return CheckResult::fail("N(cell" + at_cell(j, k) + ") != cell" + at_cell(j + 1, k));
      }
    }
  }
  return {};
}

std::vector<Subgroup> normal_chain_reading(const ControllableMatrix& m) {
  std::vector<Subgroup> out{m.cell(0, -1)};
  for (int j = 0; j <= m.ell(); ++j)
    for (int k = j; k <= m.ell(); ++k) out.push_back(m.cell(j, k));
  return out;
}

CheckResult verify_normal_chain(const TrellisSection& t, const ControllableMatrix& m) {
  const auto chain = normal_chain_reading(m);
  if (!chain.front().is_trivial()) return CheckResult::fail("chain does not start at the trivial group");
  if (chain.back().size() != t.size()) return CheckResult::fail("chain does not end at the branch group");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!is_normal(t.group(), chain[i])) return CheckResult::fail("entry " + std::to_string(i) + " not normal");
    if (i > 0 && !is_subset(chain[i - 1].elements(), chain[i].elements()))
      return CheckResult::fail("entry " + std::to_string(i - 1) + " not contained in entry " + std::to_string(i));
  }
  return {};
}

std::vector<Subgroup> delta_chain(const Chains& c) {
  std::vector<Subgroup> out;
  for (int k = -1; k <= c.ell(); ++k) out.push_back(intersect(c.x(0), c.y(k)));
  return out;
}

std::vector<Subgroup> reversed_delta_chain(const Chains& c) {
  std::vector<Subgroup> out;
  for (int k = -1; k <= c.ell(); ++k) out.push_back(intersect(c.y(0), c.x(k)));
  return out;
}

ElementSet iterate_next(const TrellisSection& t, std::span<const Element> set, int times) {
  ElementSet cur(set.begin(), set.end());
  for (int i = 0; i < times; ++i) cur = next_of_set(t, cur);
  return cur;
}

CheckResult verify_cell_generation(const TrellisSection& t, const Chains& c, const ControllableMatrix& m) {
  for (int k = 0; k <= c.ell(); ++k) {
    const Subgroup delta = intersect(c.x(0), c.y(k));
    for (int j = 0; j <= k; ++j) {
      if (iterate_next(t, delta.elements(), j) != m.cell(j, k).elements())
        return CheckResult::fail("N^j(Δ_k) != cell" + at_cell(j, k));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

CellQuotient cell_quotient(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower) {
  if (!is_subset(lower.elements(), upper.elements()))
    throw Error(ErrorKind::NotASubgroup, "quotient denominator is not contained in the numerator");
  InducedGroup induced = induced_group(g, upper);
  Subgroup lower_in = Subgroup::from_elements(induced.group, induced.from_parent(lower.elements()));
  QuotientGroup q = quotient(induced.group, lower_in);
  return CellQuotient{upper, lower, std::move(induced), std::move(q)};
}

const CellQuotient& QuotientCells::at(int j, int k) const {
  if (j < 0 || k < j || k > ell_) throw Error(ErrorKind::IndexOutOfRange, "quotient cell " + at_cell(j, k));
  return q_[j][k - j];
}

QuotientCells quotient_cells(const TrellisSection& t, const ControllableMatrix& m) {
  QuotientCells q;
  q.ell_ = m.ell();
  for (int j = 0; j <= m.ell(); ++j) {
    std::vector<CellQuotient> column;
    for (int k = j; k <= m.ell(); ++k) column.push_back(cell_quotient(t.group(), m.cell(j, k), m.cell(j, k - 1)));
    q.q_.push_back(std::move(column));
  }
  return q;
}

CheckResult check_isomorphic(const FiniteGroup& a, const FiniteGroup& b, const std::string& what) {
  if (a.order() != b.order()) {
    return CheckResult::fail(what + ": orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }
  if (a.order() > kIsomorphismOrderCap) {
    CheckResult r;
    r.warnings.push_back(what + ": order " + std::to_string(a.order()) + " above isomorphism cap, compared by order only");
    return r;
  }
  if (!are_isomorphic(a, b)) return CheckResult::fail(what + ": not isomorphic");
  return {};
}

namespace {

bool absorb(CheckResult& acc, CheckResult r) {
  acc.warnings.insert(acc.warnings.end(), r.warnings.begin(), r.warnings.end());
  if (!r.ok) {
    acc.ok = false;
    acc.failure = std::move(r.failure);
  }
  return r.ok;
}

}  // namespace

CheckResult verify_row_isomorphism(const QuotientCells& q) {
  CheckResult acc;
  for (int k = 0; k <= q.ell(); ++k)
    for (int j = 1; j <= k; ++j)
      if (!absorb(acc, check_isomorphic(q.at(0, k).quotient.group(), q.at(j, k).quotient.group(), "Q" + at_cell(0, k) + " vs Q" + at_cell(j, k))))
        return acc;
  return acc;
}

ControllableStructure analyze_section(TrellisSection t) {
  Chains c = compute_chains(t);
  ControllableMatrix m = controllable_matrix(t, c);
  QuotientCells q = quotient_cells(t, m);
  std::vector<Subgroup> deltas = delta_chain(c);
  return ControllableStructure{std::move(t), std::move(c), std::move(m), std::move(q), std::move(deltas)};
}

CheckResult verify_rectangle(const ControllableStructure& s) {
  const auto& t = s.section;
  CheckResult acc;
  for (int k = 0; k <= s.ell(); ++k) {
    const CellQuotient delta_q = cell_quotient(s.group(), s.delta(k), s.delta(k - 1));
    const std::string row = "k=" + std::to_string(k);
    PathSet upper = paths_from(t, s.delta(k).elements(), k);
    PathSet lower = paths_from(t, s.delta(k - 1).elements(), k);
    if (upper.paths.size() > PathGroup::kDefaultCap) {
      if (upper.paths.size() != delta_q.order() * lower.paths.size())
        return CheckResult::fail(row + ": path quotient order mismatch");
      acc.warnings.push_back(row + ": path group too large, path quotient compared by order only");
    } else {
      PathGroup pg = PathGroup::from_paths(t, upper);
      Subgroup lower_in = Subgroup::from_elements(pg.group(), pg.indices_of(lower));
      QuotientGroup lambda = quotient(pg.group(), lower_in);
      if (!absorb(acc, check_isomorphic(delta_q.quotient.group(), lambda.group(), row + " Δ quotient vs path quotient")))
        return acc;
    }
    for (int j = 0; j <= k; ++j) {
      if (!absorb(acc, check_isomorphic(delta_q.quotient.group(), s.cells.at(j, k).quotient.group(),
                                        row + " Δ quotient vs Q" + at_cell(j, k))))
        return acc;
    }
  }
  return acc;
}

CheckResult verify_zassenhaus_form(const ControllableStructure& s) {
  const auto& g = s.group();
  const auto& c = s.chains;
  CheckResult acc;
  for (int k = 0; k <= s.ell(); ++k) {
    for (int j = 0; j <= k; ++j) {
      const Subgroup top = intersect(c.x(j), c.y(k - j));
      const ElementSet bottom_set =
          complex_product(g, intersect(c.x(j), c.y(k - j - 1)).elements(), intersect(c.x(j - 1), c.y(k - j)).elements());
      if (!is_closed(g, bottom_set)) return CheckResult::fail("denominator at " + at_cell(j, k) + " is not a subgroup");
      const Subgroup bottom = Subgroup::from_elements(g, bottom_set);
      const CellQuotient z = cell_quotient(g, top, bottom);
      const CellQuotient& q = s.cells.at(j, k);
      // The coset map zD -> z cell(j, k-1) must be a well-defined bijection.
      std::vector<std::size_t> image(z.order(), static_cast<std::size_t>(-1));
      std::vector<char> hit(q.order(), 0);
      for (Element b : top.elements()) {
        const std::size_t from = z.label_of(b);
        const std::size_t to = q.label_of(b);
        if (image[from] == static_cast<std::size_t>(-1)) {
          if (hit[to]) return CheckResult::fail("coset map not injective at " + at_cell(j, k));
          image[from] = to;
          hit[to] = 1;
        } else if (image[from] != to) {
          return CheckResult::fail("coset map not well defined at " + at_cell(j, k));
        }
      }
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return CheckResult::fail("coset map not onto at " + at_cell(j, k));
      if (!absorb(acc, check_isomorphic(z.quotient.group(), q.quotient.group(), "Zassenhaus form at " + at_cell(j, k))))
        return acc;
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------

std::string render_schreier(const SchreierMatrix& m) {
  std::ostringstream os;
  os << "Schreier matrix (cell orders; column j, row i = X_{j-1}(X_j ∩ Y_i))\n";
  os << "      ";
  for (int j = 0; j <= m.ell(); ++j) os << std::setw(6) << ("j=" + std::to_string(j));
  os << '\n';
  for (int i = m.ell(); i >= -1; --i) {
    os << std::setw(6) << ("i=" + std::to_string(i));
    for (int j = 0; j <= m.ell(); ++j) os << std::setw(6) << m.cell(j, i).size();
    os << '\n';
  }
  return os.str();
}

std::string render_controllable(const ControllableMatrix& m) {
  std::ostringstream os;
  os << "controllable matrix (cell orders; column j, row k = X_{j-1}(X_j ∩ Y_{k-j}))\n";
  os << "      ";
  for (int j = 0; j <= m.ell(); ++j) os << std::setw(6) << ("j=" + std::to_string(j));
  os << '\n';
  for (int k = m.ell(); k >= 0; --k) {
    os << std::setw(6) << ("k=" + std::to_string(k));
    for (int j = 0; j <= m.ell(); ++j) {
      if (j <= k)
        os << std::setw(6) << m.cell(j, k).size();
      else
        os << std::setw(6) << ".";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gtrellis
