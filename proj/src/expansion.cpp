#include "gtrellis/expansion.hpp"

#include <algorithm>
#include <random>

namespace gtrellis {

NormalChain NormalChain::make(FiniteGroup g, std::vector<ElementSet> levels) {
  if (levels.empty()) throw Error(ErrorKind::Malformed, "normal chain needs at least one level");
  NormalChain c;
  c.g_ = std::move(g);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    Subgroup h = Subgroup::from_elements(c.g_, std::move(levels[j]));
    if (!is_normal(c.g_, h)) throw Error(ErrorKind::NotNormal, "level " + std::to_string(j) + " is not normal");
    if (!c.levels_.empty() && !is_subset(c.levels_.back().elements(), h.elements()))
      throw Error(ErrorKind::Malformed, "level " + std::to_string(j) + " does not contain the level below");
    c.levels_.push_back(std::move(h));
  }
  if (c.levels_.back().size() != c.g_.order()) throw Error(ErrorKind::Malformed, "top level is not the whole group");
  return c;
}

const Subgroup& NormalChain::level(int j) const {
  if (j == -1) return trivial_;
  if (j < -1 || j > ell()) throw Error(ErrorKind::IndexOutOfRange, "chain level " + std::to_string(j));
  return levels_[static_cast<std::size_t>(j)];
}

ExpansionBasis make_basis(const NormalChain& chain, const RepresentativeChooser& chooser) {
  const auto& g = chain.group();
  ExpansionBasis b;
  for (int j = 0; j <= chain.ell(); ++j) {
    const InducedGroup upper = induced_group(g, chain.level(j));
    const Subgroup lower = Subgroup::from_elements(upper.group, upper.from_parent(chain.level(j - 1).elements()));
    RepresentativeChooser local;
    if (chooser) {
      local = [&](std::span<const Element> coset) {
        ElementSet parent;
        for (Element e : coset) parent.push_back(upper.to_parent[e]);
        return upper.from_parent(chooser(parent));
      };
    }
    const CosetPartition p = coset_partition(upper.group, lower, Side::Left, local);
    std::vector<Element> reps;
    for (Element r : p.representatives) reps.push_back(upper.to_parent[r]);
    std::vector<std::size_t> label(g.order(), static_cast<std::size_t>(-1));
    for (Element e = 0; e < upper.to_parent.size(); ++e) label[upper.to_parent[e]] = p.label_of[e];
    b.reps.push_back(std::move(reps));
    b.label_of.push_back(std::move(label));
  }
  return b;
}

Element contract(const FiniteGroup& g, std::span<const Element> x) {
  Element acc = 0;
  for (Element e : x) acc = g.mul(acc, e);
  return acc;
}

ExpansionVector expand(const NormalChain& chain, const ExpansionBasis& basis, Element g) {
  const auto& grp = chain.group();
  if (g >= grp.order()) throw Error(ErrorKind::MembershipViolation, "element " + std::to_string(g) + " out of range");
  ExpansionVector x(static_cast<std::size_t>(chain.ell() + 1), 0);
  Element rest = g;
  for (int j = chain.ell(); j >= 0; --j) {
    const Element rep = basis.reps[j][basis.label_of[j][rest]];
    x[static_cast<std::size_t>(j)] = rep;
    rest = grp.mul(rest, grp.inv(rep));
  }
  return x;
}

bool in_expansion_class(const NormalChain& chain, std::span<const Element> x, Element g) {
  if (x.size() != static_cast<std::size_t>(chain.ell() + 1)) return false;
  for (int j = 0; j <= chain.ell(); ++j)
    if (!chain.level(j).contains(x[static_cast<std::size_t>(j)])) return false;
  return contract(chain.group(), x) == g;
}

namespace {

void check_members(const NormalChain& chain, std::span<const Element> x, const char* which) {
  if (x.size() != static_cast<std::size_t>(chain.ell() + 1))
    throw Error(ErrorKind::MembershipViolation, std::string(which) + " has the wrong length");
  for (int j = 0; j <= chain.ell(); ++j) {
    if (!chain.level(j).contains(x[static_cast<std::size_t>(j)])) {
      throw Error(ErrorKind::MembershipViolation, std::string(which) + " component " + std::to_string(j) +
                                                      " is not in level " + std::to_string(j));
    }
  }
}

}  // namespace

ExpansionVector otimes(const NormalChain& chain, std::span<const Element> x, std::span<const Element> xbar) {
  check_members(chain, x, "left operand");
  check_members(chain, xbar, "right operand");
  const auto& g = chain.group();
  ExpansionVector out(x.size());
  Element tail = 0;  // x_{j+1} ... x_ell
  for (std::size_t j = x.size(); j-- > 0;) {
    out[j] = g.mul(x[j], g.conj(tail, xbar[j]));
    tail = g.mul(x[j], tail);
  }
  return out;
}

std::vector<ExpansionVector> expansion_class(const NormalChain& chain, Element g, std::size_t cap) {
  const auto& grp = chain.group();
  const auto n = static_cast<std::size_t>(chain.ell() + 1);
  std::vector<ExpansionVector> out;
  ExpansionVector x(n, 0);
  // Free choice of x_0..x_{ell-1}; x_ell is then forced.
  std::function<void(std::size_t, Element)> fill = [&](std::size_t j, Element prefix) {
    if (j + 1 == n) {
      const Element last = grp.mul(grp.inv(prefix), g);
      if (chain.level(static_cast<int>(j)).contains(last)) {
        x[j] = last;
        if (out.size() == cap) throw Error(ErrorKind::TooLarge, "expansion class exceeds " + std::to_string(cap) + " vectors");
        out.push_back(x);
      }
      return;
    }
    for (Element e : chain.level(static_cast<int>(j)).elements()) {
      x[j] = e;
      fill(j + 1, grp.mul(prefix, e));
    }
  };
  fill(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string show(std::span<const Element> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

CheckResult verify_class_group(const NormalChain& chain, std::size_t order_cap) {
  const auto& g = chain.group();
  if (g.order() > order_cap) {
    throw Error(ErrorKind::TooLarge, "class-group check is exhaustive; group order " + std::to_string(g.order()) +
                                         " exceeds " + std::to_string(order_cap));
  }
  std::vector<std::vector<ExpansionVector>> classes;
  for (Element e = 0; e < g.order(); ++e) classes.push_back(expansion_class(chain, e));
  std::size_t expected = 1;
  for (int j = 0; j < chain.ell(); ++j) expected *= chain.level(j).size();
  for (Element e = 0; e < g.order(); ++e) {
    if (classes[e].size() != expected) {
      return CheckResult::fail("class of " + std::to_string(e) + " has " + std::to_string(classes[e].size()) +
                               " vectors, expected " + std::to_string(expected));
    }
  }
  std::vector<const ExpansionVector*> all;
  for (const auto& cls : classes)
    for (const auto& x : cls) all.push_back(&x);

  // Closure and translation bijections.
  for (Element a = 0; a < g.order(); ++a) {
    for (const ExpansionVector& x : classes[a]) {
      for (Element b = 0; b < g.order(); ++b) {
        const Element ab = g.mul(a, b);
        std::vector<ExpansionVector> images;
        for (const ExpansionVector& y : classes[b]) {
          ExpansionVector z = otimes(chain, x, y);
          if (!in_expansion_class(chain, z, ab)) {
            return CheckResult::fail(show(x) + " ⊗ " + show(y) + " = " + show(z) + " is not in the class of " +
                                     std::to_string(ab));
          }
          images.push_back(std::move(z));
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end() || images.size() != classes[ab].size()) {
          return CheckResult::fail("translation by " + show(x) + " is not a bijection from the class of " +
                                   std::to_string(b) + " onto the class of " + std::to_string(ab));
        }
      }
    }
  }

  // Associativity: exhaustive when small, otherwise a fixed-seed sample.
  const std::size_t n = all.size();
  auto assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
    return otimes(chain, otimes(chain, *all[i], *all[j]), *all[k]) == otimes(chain, *all[i], otimes(chain, *all[j], *all[k]));
  };
  if (n * n * n <= 200000) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!assoc(i, j, k)) return CheckResult::fail("not associative on " + show(*all[i]) + ", " + show(*all[j]) + ", " + show(*all[k]));
  } else {
    std::mt19937 rng(20240601u);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int trial = 0; trial < 20000; ++trial) {
      const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      if (!assoc(i, j, k)) return CheckResult::fail("not associative on " + show(*all[i]) + ", " + show(*all[j]) + ", " + show(*all[k]));
    }
  }

  // Identity vector and inverses.
  const ExpansionVector id(static_cast<std::size_t>(chain.ell() + 1), 0);
  for (const ExpansionVector* x : all) {
    if (otimes(chain, id, *x) != *x || otimes(chain, *x, id) != *x)
      return CheckResult::fail("identity vector does not act trivially on " + show(*x));
    const Element inv_class = g.inv(contract(g, *x));
    const bool has_inverse = std::any_of(classes[inv_class].begin(), classes[inv_class].end(), [&](const ExpansionVector& y) {
      return otimes(chain, *x, y) == id && otimes(chain, y, *x) == id;
    });
    if (!has_inverse) return CheckResult::fail(show(*x) + " has no two-sided inverse vector");
  }
  return {};
}

NormalChain splitting_normal_chain(const ControllableStructure& s) {
  std::vector<ElementSet> levels;
  for (int j = 0; j <= s.ell(); ++j) levels.push_back(s.chains.x(j).elements());
  return NormalChain::make(s.group(), std::move(levels));
}

}  // namespace gtrellis
