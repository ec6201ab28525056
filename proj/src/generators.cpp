#include "gtrellis/generators.hpp"

#include <algorithm>
#include <set>

namespace gtrellis {

namespace {

std::string at_cell(int j, int k) { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

Path identity_path(int k) { return Path(static_cast<std::size_t>(k + 1), 0); }

}  // namespace

CodeSegment code_segment(const ControllableStructure& s, int k) {
  const auto& t = s.section;
  CodeSegment seg;
  seg.k = k;
  seg.full = enumerate_segment_paths(t, s.chains, k);
  if (k == 0) {
    seg.boundary.k = 0;
    seg.boundary.paths = {identity_path(0)};
    return seg;
  }
  const PathSet shorter = enumerate_segment_paths(t, s.chains, k - 1);
  std::vector<Path> early, late;
  for (const Path& p : shorter.paths) {
    Path e = p;
    e.push_back(0);
    early.push_back(std::move(e));
    Path l{0};
    l.insert(l.end(), p.begin(), p.end());
    late.push_back(std::move(l));
  }
  std::set<Path> product;
  for (const Path& a : early)
    for (const Path& b : late) product.insert(path_product(t, a, b));
  seg.boundary.k = k;
  seg.boundary.paths.assign(product.begin(), product.end());
  return seg;
}

std::size_t Granule::label_of(const Path& p) const {
  auto i = paths.find(p);
  if (!i) throw Error(ErrorKind::MembershipViolation, "path is not a code path of this length");
  return cosets.label_of[*i];
}

Granule granule(const ControllableStructure& s, int k) {
  CodeSegment seg = code_segment(s, k);
  PathGroup pg = PathGroup::from_paths(s.section, seg.full);
  // Closure of the boundary set is checked here rather than assumed.
  Subgroup boundary = Subgroup::from_elements(pg.group(), pg.indices_of(seg.boundary));
  if (!is_normal(pg.group(), boundary)) {
    throw Error(ErrorKind::NotNormal, "boundary subgroup not normal at k=" + std::to_string(k));
  }
  CosetPartition cosets = coset_partition(pg.group(), boundary, Side::Left);
  return Granule{std::move(seg), std::move(pg), std::move(boundary), std::move(cosets)};
}

PathChooser lex_chooser() {
  return [](const std::vector<Path>&) { return std::size_t{0}; };
}

PathChooser revlex_chooser() {
  return [](const std::vector<Path>& coset) { return coset.size() - 1; };
}

// ---------------------------------------------------------------------------

GeneratorBasis::GeneratorBasis(std::vector<std::vector<Path>> generators) : gens_(std::move(generators)) {
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (gens_[k].empty()) throw Error(ErrorKind::Malformed, "row " + std::to_string(k) + " has no generators");
    for (const Path& p : gens_[k])
      if (p.size() != k + 1) throw Error(ErrorKind::Malformed, "row " + std::to_string(k) + " generator of wrong length");
  }
}

LabelShape GeneratorBasis::shape() const {
  std::vector<std::size_t> sizes;
  for (const auto& row : gens_) sizes.push_back(row.size());
  return LabelShape(std::move(sizes));
}

GeneratorBasis GeneratorBasis::with_component(int j, int k, std::size_t u, Element branch) const {
  GeneratorBasis copy = *this;
  copy.gens_.at(static_cast<std::size_t>(k)).at(u).at(static_cast<std::size_t>(j)) = branch;
  return copy;
}

GeneratorBasis extract_generators(const ControllableStructure& s, const PathChooser& chooser) {
  std::vector<std::vector<Path>> gens;
  for (int k = 0; k <= s.ell(); ++k) {
    const Granule gr = granule(s, k);
    std::vector<Path> row;
    for (std::size_t u = 0; u < gr.order(); ++u) {
      std::vector<Path> coset;
      for (Element i : gr.cosets.cosets[u]) coset.push_back(gr.paths.path(i));
      if (u == 0) {
        row.push_back(identity_path(k));
        continue;
      }
      const std::size_t pick = chooser(coset);
      if (pick >= coset.size()) throw Error(ErrorKind::IndexOutOfRange, "chooser picked outside the coset");
      row.push_back(coset[pick]);
    }
    gens.push_back(std::move(row));
  }
  return GeneratorBasis(std::move(gens));
}

Element compose(const FiniteGroup& g, const GeneratorBasis& basis, const LabelArray& u, ProductOrder order) {
  const int ell = basis.ell();
  Element acc = 0;
  if (order == ProductOrder::ColumnRow) {
    for (int j = 0; j <= ell; ++j)
      for (int k = j; k <= ell; ++k) acc = g.mul(acc, basis.r(j, k, u.at(j, k)));
  } else {
    for (int k = 0; k <= ell; ++k)
      for (int j = 0; j <= k; ++j) acc = g.mul(acc, basis.r(j, k, u.at(j, k)));
  }
  return acc;
}

namespace {

// Peels generator components off the right end of c, in reverse column-row order,
// for the cells of columns 0..last_column. Returns the remainder.
Element peel(const ControllableStructure& s, const GeneratorBasis& basis, Element c, int last_column, LabelArray& out) {
  const auto& g = s.group();
  for (int j = last_column; j >= 0; --j) {
    for (int k = s.ell(); k >= j; --k) {
      const Subgroup& below = s.matrix.cell(j, k - 1);
      bool found = false;
      for (std::size_t u = 0; u < basis.size(k); ++u) {
        const Element rest = g.mul(c, g.inv(basis.r(j, k, u)));
        if (below.contains(rest)) {
          out.at(j, k) = u;
          c = rest;
          found = true;
          break;
        }
      }
      if (!found) {
        throw Error(ErrorKind::FactorizationFailed, "no generator component matches the coset at " + at_cell(j, k));
      }
    }
  }
  return c;
}

}  // namespace

LabelArray factor(const ControllableStructure& s, const GeneratorBasis& basis, Element b) {
  LabelArray u(basis.shape());
  const Element rest = peel(s, basis, b, s.ell(), u);
  if (rest != 0) throw Error(ErrorKind::FactorizationFailed, "non-identity remainder after factoring");
  return u;
}

std::vector<std::size_t> factor_column0(const ControllableStructure& s, const GeneratorBasis& basis, Element x) {
  if (!s.chains.x(0).contains(x)) {
    throw Error(ErrorKind::InputNotInX0, "branch " + std::to_string(x) + " does not leave state 0");
  }
  LabelArray u(basis.shape());
  const Element rest = peel(s, basis, x, 0, u);
  if (rest != 0) throw Error(ErrorKind::FactorizationFailed, "non-identity remainder after factoring column 0");
  return u.column0();
}

// ---------------------------------------------------------------------------

CheckResult verify_complete_system(const ControllableStructure& s, const GeneratorBasis& basis) {
  const auto& g = s.group();
  const auto& c = s.chains;
  if (basis.ell() != s.ell()) return CheckResult::fail("basis has the wrong number of rows");
  for (int k = 0; k <= s.ell(); ++k) {
    for (int j = 0; j <= k; ++j) {
      const Subgroup home = intersect(c.x(j), c.y(k - j));
      const CellQuotient& q = s.cells.at(j, k);
      if (basis.size(k) != q.order())
        return CheckResult::fail("row " + std::to_string(k) + " has " + std::to_string(basis.size(k)) +
                                 " generators but Q" + at_cell(j, k) + " has order " + std::to_string(q.order()));
      std::vector<char> hit(q.order(), 0);
      for (std::size_t u = 0; u < basis.size(k); ++u) {
        const Element r = basis.r(j, k, u);
        if (!home.contains(r)) return CheckResult::fail("r" + at_cell(j, k) + "(" + std::to_string(u) + ") outside X_j ∩ Y_{k-j}");
        const std::size_t label = q.label_of(r);
        if (hit[label]) return CheckResult::fail("r" + at_cell(j, k) + " repeats a coset of Q" + at_cell(j, k));
        hit[label] = 1;
      }
      if (basis.r(j, k, 0) != 0) return CheckResult::fail("r" + at_cell(j, k) + "(0) is not the identity");
    }
  }
  const LabelShape shape = basis.shape();
  if (shape.edge_count() != s.section.size()) {
    return CheckResult::fail("label arrays " + std::to_string(shape.edge_count()) + " != |B| " + std::to_string(s.section.size()));
  }
  std::vector<std::size_t> hits(s.section.size(), 0);
  for_each_array(shape, [&](const LabelArray& u) { ++hits[compose(g, basis, u)]; });
  for (Element b = 0; b < hits.size(); ++b) {
    if (hits[b] != 1) {
      return CheckResult::fail("branch " + std::to_string(b) + " has " + std::to_string(hits[b]) + " factorizations");
    }
  }
  return {};
}

CheckResult verify_span_property(const ControllableStructure& s, const GeneratorBasis& basis) {
  for (int k = 0; k <= s.ell(); ++k) {
    const CodeSegment seg = code_segment(s, k);
    for (std::size_t u = 1; u < basis.size(k); ++u) {
      const Path& p = basis.generator(k, u);
      const std::string at = "generator (" + std::to_string(k) + "," + std::to_string(u) + ")";
      if (!seg.full.contains(p)) return CheckResult::fail(at + " is not a code path");
      if (seg.boundary.contains(p)) return CheckResult::fail(at + " is a product of shorter code paths");
      if (p.front() == 0 || p.back() == 0) return CheckResult::fail(at + " does not span its window");
    }
  }
  return {};
}

CheckResult verify_reversed_transversal(const ControllableStructure& s, const GeneratorBasis& basis) {
  const auto& t = s.section;
  const ControllableStructure rev = analyze_section(reverse_section(t));
  std::vector<Element> to_rev(t.size());
  for (Element b = 0; b < t.size(); ++b) {
    const Branch& br = t.branch(b);
    to_rev[b] = rev.section.index_of({br.s2, br.a, br.s});
  }
  auto mapped = [&](std::span<const Element> set) {
    std::vector<Element> out;
    for (Element b : set) out.push_back(to_rev[b]);
    return make_set(std::move(out));
  };
  if (rev.ell() != s.ell()) return CheckResult::fail("reversed section has a different controllability index");
  for (int i = -1; i <= s.ell(); ++i) {
    if (mapped(s.chains.y(i).elements()) != rev.chains.x(i).elements())
      return CheckResult::fail("reversed X_" + std::to_string(i) + " differs from Y_" + std::to_string(i));
    if (mapped(s.chains.x(i).elements()) != rev.chains.y(i).elements())
      return CheckResult::fail("reversed Y_" + std::to_string(i) + " differs from X_" + std::to_string(i));
  }
  for (int k = 0; k <= s.ell(); ++k) {
    const Granule gr = granule(rev, k);
    const CellQuotient first = cell_quotient(rev.group(), rev.delta(k), rev.delta(k - 1));
    if (gr.order() != basis.size(k) || first.order() != basis.size(k))
      return CheckResult::fail("k=" + std::to_string(k) + ": reversed granule order differs from generator count");
    std::vector<char> hit_granule(gr.order(), 0), hit_first(first.order(), 0);
    for (std::size_t u = 0; u < basis.size(k); ++u) {
      const Path& p = basis.generator(k, u);
      Path q;
      for (auto it = p.rbegin(); it != p.rend(); ++it) q.push_back(to_rev[*it]);
      if (!gr.paths.find(q)) return CheckResult::fail("k=" + std::to_string(k) + ": reversed generator is not a code path");
      const std::size_t a = gr.label_of(q);
      const std::size_t b = first.label_of(q.front());
      if (hit_granule[a] || hit_first[b])
        return CheckResult::fail("k=" + std::to_string(k) + ": reversed generators repeat a coset");
      hit_granule[a] = hit_first[b] = 1;
    }
  }
  return {};
}

CheckResult verify_granule_lambda_iso(const ControllableStructure& s) {
  const auto& t = s.section;
  for (int k = 0; k <= s.ell(); ++k) {
    const Granule gr = granule(s, k);
    // Paths leaving Δ_{k-1} with any continuation are exactly those whose first branch is in Δ_{k-1},
    // so the target coset of a code path is read off its first branch.
    const CellQuotient lambda = cell_quotient(s.group(), s.delta(k), s.delta(k - 1));
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> mu(gr.order(), unset);
    std::vector<char> hit(lambda.order(), 0);
    const std::string at = "k=" + std::to_string(k);
    for (Element i = 0; i < gr.paths.group().order(); ++i) {
      const Path& p = gr.paths.path(i);
      const std::size_t from = gr.cosets.label_of[i];
      const std::size_t to = lambda.label_of(p.front());
      if (mu[from] == unset) {
        if (hit[to]) return CheckResult::fail(at + ": not injective at coset " + std::to_string(from));
        mu[from] = to;
        hit[to] = 1;
      } else if (mu[from] != to) {
        return CheckResult::fail(at + ": not well defined at coset " + std::to_string(from));
      }
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return CheckResult::fail(at + ": not onto");
    for (std::size_t a = 0; a < gr.order(); ++a) {
      for (std::size_t b = 0; b < gr.order(); ++b) {
        const Path ab = path_product(t, gr.paths.path(gr.cosets.representatives[a]), gr.paths.path(gr.cosets.representatives[b]));
        const std::size_t lhs = mu[gr.label_of(ab)];
        const std::size_t rhs = lambda.quotient.group().mul(static_cast<Element>(mu[a]), static_cast<Element>(mu[b]));
        if (lhs != rhs) return CheckResult::fail(at + ": not a homomorphism on cosets " + std::to_string(a) + ", " + std::to_string(b));
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

bool BasisChangeMap::is_identity() const {
  for (std::size_t e = 0; e < edge_map.size(); ++e)
    if (edge_map[e] != e) return false;
  return true;
}

std::vector<std::size_t> change_key(const LabelArray& u, int j, int k, MemoryKey rule) {
  std::vector<std::size_t> key = u.memory_key(j, k);
  if (rule == MemoryKey::LaterColumnsAndSameEpoch)
    for (int kk = k + 1; kk <= u.ell(); ++kk) key.push_back(u.at(j, kk));
  return key;
}

BasisChangeMap change_of_basis(const ControllableStructure& s, const GeneratorBasis& from, const GeneratorBasis& to,
                               MemoryKey rule) {
  BasisChangeMap m;
  m.shape = from.shape();
  m.rule = rule;
  if (to.shape() != m.shape) throw Error(ErrorKind::Inconsistent, "bases have different label shapes");
  m.edge_map.assign(m.shape.edge_count(), 0);
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  for (Element b = 0; b < s.section.size(); ++b) {
    const LabelArray u = factor(s, from, b);
    const LabelArray v = factor(s, to, b);
    m.edge_map[edge_rank(m.shape, u)] = edge_rank(m.shape, v);
    for (int k = 0; k <= m.shape.ell(); ++k) {
      for (int j = 0; j <= k; ++j) {
        auto it = m.beta.try_emplace({j, k, change_key(u, j, k, rule)}, Permutation(m.shape.row_size(k), unset)).first;
        std::size_t& slot = it->second[u.at(j, k)];
        if (slot == unset) {
          slot = v.at(j, k);
        } else if (slot != v.at(j, k)) {
          throw Error(ErrorKind::Inconsistent, "branch " + std::to_string(b) + " maps label " + std::to_string(u.at(j, k)) +
                                                   " at " + at_cell(j, k) + " to " + std::to_string(v.at(j, k)) +
                                                   ", an earlier branch with the same memory key mapped it to " +
                                                   std::to_string(slot));
        }
      }
    }
  }
  for (const auto& [where, perm] : m.beta) {
    Permutation sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t x = 0; x < sorted.size(); ++x) {
      if (sorted[x] != x) {
        throw Error(ErrorKind::Inconsistent, "label map at " + at_cell(std::get<0>(where), std::get<1>(where)) +
                                                 " is not a permutation");
      }
    }
  }
  return m;
}

BasisCount count_generator_bases(const ControllableStructure& s, std::size_t cap) {
  BasisCount out;
  out.count = 1;
  BigInt work = 1;
  for (int k = 0; k <= s.ell(); ++k) {
    const Granule gr = granule(s, k);
    for (std::size_t u = 1; u < gr.order(); ++u) {
      const auto& coset = gr.cosets.cosets[u];
      work *= coset.size();
      if (work > cap) throw Error(ErrorKind::TooLarge, "generator basis count exceeds " + std::to_string(cap));
      // A generator is its component tuple, so choices in a coset are distinct paths.
      std::set<Path> systems;
      for (Element i : coset) systems.insert(gr.paths.path(i));
      out.count *= systems.size();
    }
  }
  out.aut_bound = count_automorphisms(ubank_from_quotients(s.cells));
  out.within_bound = out.count <= out.aut_bound;
  return out;
}

}  // namespace gtrellis
