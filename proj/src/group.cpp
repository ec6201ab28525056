#include "gtrellis/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gtrellis {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentityAtZero: return "NoIdentityAtZero";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::TooMany: return "TooMany";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotSubdirect: return "NotSubdirect";
    case ErrorKind::NotControllable: return "NotControllable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DiagonalIdentityFailed: return "DiagonalIdentityFailed";
    case ErrorKind::InputNotInX0: return "InputNotInX0";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::MembershipViolation: return "MembershipViolation";
    case ErrorKind::FactorizationFailed: return "FactorizationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

namespace {

std::string fmt_triple(const char* what, std::size_t a, std::size_t b, std::int64_t v) {
  std::ostringstream os;
  os << what << " at (" << a << ", " << b << ") = " << v;
  return os.str();
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table)
    : order_(order), table_(std::move(table)), inverse_(order, 0) {
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::int64_t>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::Malformed, "empty table");
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) {
      throw Error(ErrorKind::Malformed, "row " + std::to_string(r) + " has " + std::to_string(table[r].size()) +
                                            " entries, expected " + std::to_string(n));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] < 0 || static_cast<std::size_t>(table[a][b]) >= n) {
        throw Error(ErrorKind::NotClosed, fmt_triple("entry out of range", a, b, table[a][b]));
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (table[0][x] != static_cast<std::int64_t>(x)) {
      throw Error(ErrorKind::NoIdentityAtZero, fmt_triple("0*x != x", 0, x, table[0][x]));
    }
    if (table[x][0] != static_cast<std::int64_t>(x)) {
      throw Error(ErrorKind::NoIdentityAtZero, fmt_triple("x*0 != x", x, 0, table[x][0]));
    }
  }
  // Latin square: each row and column is a permutation.
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::int64_t> seen_row(n, -1), seen_col(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
      auto v = table[r][c];
      if (seen_row[v] >= 0) {
        throw Error(ErrorKind::NotClosed, "Latin-square violation: row " + std::to_string(r) + " repeats " +
                                              std::to_string(v) + " at columns " + std::to_string(seen_row[v]) +
                                              " and " + std::to_string(c));
      }
      seen_row[v] = static_cast<std::int64_t>(c);
      auto w = table[c][r];
      if (seen_col[w] >= 0) {
        throw Error(ErrorKind::NotClosed, "Latin-square violation: column " + std::to_string(r) + " repeats " +
                                              std::to_string(w) + " at rows " + std::to_string(seen_col[w]) +
                                              " and " + std::to_string(c));
      }
      seen_col[w] = static_cast<std::int64_t>(c);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = table[a][b] == 0 && table[b][a] == 0;
    if (!found) throw Error(ErrorKind::NoInverse, "element " + std::to_string(a) + " has no two-sided inverse");
  }
  std::vector<Element> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<Element>(table[a][b]);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Element ab = flat[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (flat[ab * n + c] != flat[a * n + flat[b * n + c]]) {
          std::ostringstream os;
          os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
          throw Error(ErrorKind::NotAssociative, os.str());
        }
      }
    }
  }
  return FiniteGroup(n, std::move(flat));
}

FiniteGroup FiniteGroup::from_trusted(std::size_t order, const std::function<Element(Element, Element)>& mul) {
  std::vector<Element> flat(order * order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b) flat[a * order + b] = mul(a, b);
  return FiniteGroup(order, std::move(flat));
}

FiniteGroup validate_group(const std::vector<std::vector<std::int64_t>>& table) {
  return FiniteGroup::from_table(table);
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> out(order_);
  for (Element a = 0; a < order_; ++a)
    out[a].assign(table_.begin() + a * order_, table_.begin() + (a + 1) * order_);
  return out;
}

// ---------------------------------------------------------------------------

ElementSet make_set(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

bool is_subset(std::span<const Element> a, std::span<const Element> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet set_intersection(std::span<const Element> a, std::span<const Element> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_closed(const FiniteGroup& g, std::span<const Element> set) {
  if (set.empty() || !std::binary_search(set.begin(), set.end(), Element{0})) return false;
  for (Element a : set)
    for (Element b : set)
      if (!std::binary_search(set.begin(), set.end(), g.mul(a, b))) return false;
  return true;
}

Subgroup Subgroup::from_elements(const FiniteGroup& g, ElementSet elements) {
  elements = make_set(std::move(elements));
  for (Element e : elements) {
    if (e >= g.order()) throw Error(ErrorKind::NotASubgroup, "element " + std::to_string(e) + " out of range");
  }
  if (elements.empty() || elements.front() != 0) throw Error(ErrorKind::NotASubgroup, "identity missing");
  for (Element a : elements) {
    for (Element b : elements) {
      if (!std::binary_search(elements.begin(), elements.end(), g.mul(a, b))) {
        throw Error(ErrorKind::NotASubgroup, "product " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                                                 std::to_string(g.mul(a, b)) + " escapes the set");
      }
    }
  }
  return Subgroup(std::move(elements));
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  ElementSet all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(std::move(all));
}

bool Subgroup::contains(Element e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Element> seed) {
  // Finite group: closure under products alone suffices.
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{0};
  in[0] = 1;
  std::vector<Element> gens;
  for (Element s : seed) {
    if (!in[s]) gens.push_back(s);
  }
  for (Element s : gens) {
    if (in[s]) continue;
    // Multiply every member by s until nothing new appears.
    std::vector<Element> frontier = members;
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (Element m : frontier) {
        for (Element t : gens) {
          Element p = g.mul(m, t);
          if (!in[p]) {
            in[p] = 1;
            members.push_back(p);
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return Subgroup(make_set(std::move(members)));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  return Subgroup(set_intersection(a.elements(), b.elements()));
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element e : h.elements())
      if (!h.contains(g.conj(x, e))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, std::span<const Element> h) {
  return is_normal(g, Subgroup::from_elements(g, ElementSet(h.begin(), h.end())));
}

Subgroup normal_closure(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> seed;
  for (Element x = 0; x < g.order(); ++x)
    for (Element e : h.elements()) seed.push_back(g.conj(x, e));
  seed = make_set(std::move(seed));
  return subgroup_closure(g, seed);
}

ElementSet complex_product(const FiniteGroup& g, std::span<const Element> h1, std::span<const Element> h2) {
  std::vector<char> in(g.order(), 0);
  for (Element a : h1)
    for (Element b : h2) in[g.mul(a, b)] = 1;
  ElementSet out;
  for (Element x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

Subgroup subgroup_product(const FiniteGroup& g, const Subgroup& h1, const Subgroup& h2) {
  return Subgroup::from_elements(g, complex_product(g, h1.elements(), h2.elements()));
}

// ---------------------------------------------------------------------------

CosetPartition coset_partition(const FiniteGroup& g, const Subgroup& h, Side side, const RepresentativeChooser& chooser) {
  CosetPartition p;
  p.side = side;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  p.label_of.assign(g.order(), unset);
  for (Element x = 0; x < g.order(); ++x) {
    if (p.label_of[x] != unset) continue;
    ElementSet coset;
    coset.reserve(h.size());
    for (Element e : h.elements()) coset.push_back(side == Side::Left ? g.mul(x, e) : g.mul(e, x));
    coset = make_set(std::move(coset));
    const std::size_t label = p.cosets.size();
    for (Element c : coset) p.label_of[c] = label;
    Element rep = coset.front();
    if (label != 0 && chooser) {
      rep = chooser(coset);
      if (!std::binary_search(coset.begin(), coset.end(), rep))
        throw Error(ErrorKind::MembershipViolation, "chooser returned an element outside the coset");
    }
    p.representatives.push_back(rep);
    p.cosets.push_back(std::move(coset));
  }
  return p;
}

QuotientGroup quotient(const FiniteGroup& g, const Subgroup& n, const RepresentativeChooser& chooser) {
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "subgroup of order " + std::to_string(n.size()) + " is not normal");
  CosetPartition p = coset_partition(g, n, Side::Left, chooser);
  const auto& reps = p.representatives;
  const auto& label = p.label_of;
  FiniteGroup q = FiniteGroup::from_trusted(p.cosets.size(), [&](Element a, Element b) {
    return static_cast<Element>(label[g.mul(reps[a], reps[b])]);
  });
  return QuotientGroup(std::move(q), n, std::move(p));
}

Element InducedGroup::from_parent(Element parent) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent);
  if (it == to_parent.end() || *it != parent)
    throw Error(ErrorKind::MembershipViolation, "element " + std::to_string(parent) + " is not in the subgroup");
  return static_cast<Element>(it - to_parent.begin());
}

ElementSet InducedGroup::from_parent(std::span<const Element> parent) const {
  ElementSet out;
  out.reserve(parent.size());
  for (Element p : parent) out.push_back(from_parent(p));
  return make_set(std::move(out));
}

InducedGroup induced_group(const FiniteGroup& g, const Subgroup& h) {
  const auto& elems = h.elements();
  std::vector<Element> index(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Element>(i);
  FiniteGroup sub = FiniteGroup::from_trusted(elems.size(), [&](Element a, Element b) {
    return index[g.mul(elems[a], elems[b])];
  });
  return InducedGroup{std::move(sub), elems};
}

// ---------------------------------------------------------------------------

std::vector<Element> generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  Subgroup span;
  for (Element x = 1; x < g.order(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = subgroup_closure(g, gens);
    if (span.size() == g.order()) break;
  }
  return gens;
}

namespace {

std::map<std::size_t, std::size_t> order_profile(const FiniteGroup& g) {
  std::map<std::size_t, std::size_t> prof;
  for (Element x = 0; x < g.order(); ++x) ++prof[g.element_order(x)];
  return prof;
}

// Extends a generator assignment along the right Cayley graph; returns the map or empty on conflict.
std::vector<Element> extend_images(const FiniteGroup& a, const FiniteGroup& b, std::span<const Element> gens,
                                   std::span<const Element> images) {
  constexpr Element unset = static_cast<Element>(-1);
  std::vector<Element> f(a.order(), unset);
  std::vector<char> used(b.order(), 0);
  f[0] = 0;
  used[0] = 1;
  std::vector<Element> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Element x = queue[qi];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Element y = a.mul(x, gens[i]);
      Element fy = b.mul(f[x], images[i]);
      if (f[y] == unset) {
        if (used[fy]) return {};
        f[y] = fy;
        used[fy] = 1;
        queue.push_back(y);
      } else if (f[y] != fy) {
        return {};
      }
    }
  }
  if (queue.size() != a.order()) return {};
  return f;
}

}  // namespace

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b, std::size_t order_cap) {
  if (a.order() > order_cap || b.order() > order_cap) {
    throw Error(ErrorKind::TooLarge, "isomorphism test capped at order " + std::to_string(order_cap));
  }
  if (a.order() != b.order()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;
  if (order_profile(a) != order_profile(b)) return false;
  const std::vector<Element> gens = generating_set(a);
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t ord = a.element_order(gens[i]);
    for (Element y = 0; y < b.order(); ++y)
      if (b.element_order(y) == ord) candidates[i].push_back(y);
  }
  std::vector<Element> images(gens.size());
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == gens.size()) return !extend_images(a, b, gens, images).empty();
    for (Element y : candidates[i]) {
      images[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  return search(0);
}

// ---------------------------------------------------------------------------

FiniteGroup trivial_group() {
  return FiniteGroup::from_trusted(1, [](Element, Element) { return Element{0}; });
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::Malformed, "cyclic group of order 0");
  return FiniteGroup::from_trusted(n, [n](Element a, Element b) { return static_cast<Element>((a + b) % n); });
}

FiniteGroup elementary_abelian_2(std::size_t rank) {
  return FiniteGroup::from_trusted(std::size_t{1} << rank, [](Element a, Element b) { return a ^ b; });
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const auto n = static_cast<Element>(g.order());
  return FiniteGroup::from_trusted(g.order() * h.order(), [&](Element x, Element y) {
    return g.mul(x % n, y % n) + n * h.mul(x / n, y / n);
  });
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);
  return FiniteGroup::from_trusted(perms.size(), [&](Element a, Element b) {
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = perms[a][perms[b][i]];
    return index.at(r);
  });
}

}  // namespace gtrellis
