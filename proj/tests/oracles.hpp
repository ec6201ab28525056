#pragma once

// Brute-force reference computations. Each works straight from Cayley tables
// and branch triples, without the library's chain, coset or path machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "gtrellis/trellis.hpp"

namespace oracle {

using gtrellis::Branch;
using gtrellis::Element;
using gtrellis::FiniteGroup;
using gtrellis::TrellisSection;
using Set = std::set<Element>;
using Table = std::vector<std::vector<std::int64_t>>;

inline bool is_group(const Table& t) {
  const auto n = static_cast<std::int64_t>(t.size());
  if (n == 0) return false;
  for (const auto& row : t) {
    if (static_cast<std::int64_t>(row.size()) != n) return false;
    for (auto x : row)
      if (x < 0 || x >= n) return false;
  }
  for (std::int64_t a = 0; a < n; ++a)
    if (t[0][a] != a || t[a][0] != a) return false;
  for (std::int64_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::int64_t b = 0; b < n; ++b) has_inverse = has_inverse || (t[a][b] == 0 && t[b][a] == 0);
    if (!has_inverse) return false;
  }
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  return true;
}

inline Set closure(const FiniteGroup& g, const Set& seed) {
  Set h = seed;
  h.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    const Set snapshot = h;
    for (Element a : snapshot)
      for (Element b : snapshot) grew = h.insert(g.mul(a, b)).second || grew;
  }
  return h;
}

inline bool normal(const FiniteGroup& g, const Set& h) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y : h) {
      Element xinv = 0;
      while (g.mul(x, xinv) != 0) ++xinv;
      if (!h.count(g.mul(g.mul(x, y), xinv))) return false;
    }
  return true;
}

inline Set product(const FiniteGroup& g, const Set& a, const Set& b) {
  Set out;
  for (Element x : a)
    for (Element y : b) out.insert(g.mul(x, y));
  return out;
}

/// Every subgroup, by adjoining one element at a time from the trivial group.
inline std::vector<Set> all_subgroups(const FiniteGroup& g) {
  std::set<Set> seen{{0}};
  std::vector<Set> todo{{0}};
  while (!todo.empty()) {
    Set h = todo.back();
    todo.pop_back();
    for (Element x = 0; x < g.order(); ++x) {
      if (h.count(x)) continue;
      Set bigger = h;
      bigger.insert(x);
      bigger = closure(g, bigger);
      if (seen.insert(bigger).second) todo.push_back(bigger);
    }
  }
  return {seen.begin(), seen.end()};
}

/// Isomorphism by trying every bijection fixing the identity; for orders up to 8.
inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.order();
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool hom = true;
    for (Element x = 0; x < n && hom; ++x)
      for (Element y = 0; y < n && hom; ++y) hom = perm[a.mul(x, y)] == b.mul(perm[x], perm[y]);
    if (hom) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

// ---- trellis walks ----

/// States reachable from state 0 in exactly `steps` branches.
inline Set reach(const TrellisSection& t, int steps) {
  Set now{0};
  for (int i = 0; i < steps; ++i) {
    Set next;
    for (const Branch& b : t.branches())
      if (now.count(b.s)) next.insert(b.s2);
    now = next;
  }
  return now;
}

/// States from which state 0 is reachable in exactly `steps` branches.
inline Set coreach(const TrellisSection& t, int steps) {
  Set now{0};
  for (int i = 0; i < steps; ++i) {
    Set prev;
    for (const Branch& b : t.branches())
      if (now.count(b.s2)) prev.insert(b.s);
    now = prev;
  }
  return now;
}

/// Branches at time j of some path that starts in state 0 at time 0.
inline Set x_chain(const TrellisSection& t, int j) {
  if (j < 0) return {0};
  const Set r = reach(t, j);
  Set out;
  for (Element b = 0; b < t.size(); ++b)
    if (r.count(t.left(b))) out.insert(b);
  return out;
}

/// Branches i steps before some path ends in state 0.
inline Set y_chain(const TrellisSection& t, int i) {
  if (i < 0) return {0};
  const Set r = coreach(t, i);
  Set out;
  for (Element b = 0; b < t.size(); ++b)
    if (r.count(t.right(b))) out.insert(b);
  return out;
}

/// Least l >= 1 such that every state is reachable from 0 in exactly l steps; -1 if none.
inline int controllability_index(const TrellisSection& t) {
  for (int l = 1; l <= static_cast<int>(t.sigma().order()) + 1; ++l)
    if (reach(t, l).size() == t.sigma().order()) return l;
  return -1;
}

using Path = std::vector<Element>;

inline bool connected(const TrellisSection& t, const Path& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (t.right(p[i]) != t.left(p[i + 1])) return false;
  return true;
}

/// Every tuple in B^(k+1), filtered to connected paths from state 0 back to state 0.
inline std::vector<Path> segment_paths(const TrellisSection& t, int k) {
  std::vector<Path> out;
  const std::size_t n = t.size();
  Path p(static_cast<std::size_t>(k + 1), 0);
  for (;;) {
    if (t.left(p.front()) == 0 && t.right(p.back()) == 0 && connected(t, p)) out.push_back(p);
    std::size_t i = p.size();
    while (i > 0 && ++p[i - 1] == n) p[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline Path path_mul(const TrellisSection& t, const Path& p, const Path& q) {
  Path r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = t.group().mul(p[i], q[i]);
  return r;
}

inline std::set<Path> path_closure(const TrellisSection& t, std::set<Path> h, std::size_t len) {
  h.insert(Path(len, 0));
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = h;
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) grew = h.insert(path_mul(t, a, b)).second || grew;
  }
  return h;
}

/// Subgroup of C_[0,k] generated by the two embeddings of C_[0,k-1].
inline std::set<Path> boundary_paths(const TrellisSection& t, int k) {
  const auto len = static_cast<std::size_t>(k + 1);
  std::set<Path> gens;
  if (k > 0) {
    for (Path p : segment_paths(t, k - 1)) {
      Path early = p, late = p;
      early.push_back(0);
      late.insert(late.begin(), 0);
      gens.insert(early);
      gens.insert(late);
    }
  }
  return path_closure(t, gens, len);
}

/// Cosets of the boundary subgroup in C_[0,k], each as a sorted list.
inline std::vector<std::vector<Path>> granule_cosets(const TrellisSection& t, int k) {
  const auto full = segment_paths(t, k);
  const auto bound = boundary_paths(t, k);
  std::set<std::vector<Path>> cosets;
  for (const Path& p : full) {
    std::vector<Path> c;
    for (const Path& q : bound) c.push_back(path_mul(t, p, q));
    std::sort(c.begin(), c.end());
    cosets.insert(c);
  }
  return {cosets.begin(), cosets.end()};
}

// ---- graphs ----

inline std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Multigraph automorphisms: node permutations preserving every edge multiplicity,
/// times the matchings of parallel edges. For up to 8 nodes.
inline std::uint64_t multigraph_automorphisms(std::size_t nodes, const std::vector<std::size_t>& tail,
                                              const std::vector<std::size_t>& head) {
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> mult;
  for (std::size_t e = 0; e < tail.size(); ++e) ++mult[{tail[e], head[e]}];
  std::uint64_t matchings = 1;
  for (const auto& [_, m] : mult) matchings *= factorial(m);
  std::vector<std::size_t> perm(nodes);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (const auto& [ab, m] : mult) {
      auto it = mult.find({perm[ab.first], perm[ab.second]});
      if (it == mult.end() || it->second != m) {
        ok = false;
        break;
      }
    }
    if (ok) count += matchings;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// prod_k (n_k!)^(prod_{k'>k} n_k'^(k'-k)).
inline std::uint64_t automorphism_formula(const std::vector<std::size_t>& sizes) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::uint64_t keys = 1;
    for (std::size_t k2 = k + 1; k2 < sizes.size(); ++k2)
      for (std::size_t d = 0; d < k2 - k; ++d) keys *= sizes[k2];
    for (std::uint64_t i = 0; i < keys; ++i) total *= factorial(sizes[k]);
  }
  return total;
}

// ---- expansions ----

/// Every (x_0..x_ell) with x_j in levels[j] and left-to-right product g.
inline std::vector<std::vector<Element>> expansion_class(const FiniteGroup& g, const std::vector<Set>& levels,
                                                         Element target) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> x;
  std::function<void(std::size_t, Element)> go = [&](std::size_t j, Element acc) {
    if (j == levels.size()) {
      if (acc == target) out.push_back(x);
      return;
    }
    for (Element e : levels[j]) {
      x.push_back(e);
      go(j + 1, g.mul(acc, e));
      x.pop_back();
    }
  };
  go(0, 0);
  return out;
}

}  // namespace oracle
