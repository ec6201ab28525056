#include "gtrellis/trellis.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gtrellis {

TrellisSection::TrellisSection(FiniteGroup sigma, FiniteGroup alphabet, std::vector<Branch> branches, std::string name)
    : sigma_(std::move(sigma)),
      alphabet_(std::move(alphabet)),
      branches_(std::move(branches)),
      group_(trivial_group()),
      name_(std::move(name)) {
  for (std::size_t i = 0; i < branches_.size(); ++i) lookup_.emplace(key(branches_[i]), static_cast<Element>(i));
}

std::uint64_t TrellisSection::key(const Branch& b) const {
  const std::uint64_t ns = sigma_.order(), na = alphabet_.order();
  return b.s + ns * (b.a + na * static_cast<std::uint64_t>(b.s2));
}

std::optional<Element> TrellisSection::find(const Branch& b) const {
  if (b.s >= sigma_.order() || b.s2 >= sigma_.order() || b.a >= alphabet_.order()) return std::nullopt;
  auto it = lookup_.find(key(b));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Element TrellisSection::index_of(const Branch& b) const {
  if (auto i = find(b)) return *i;
  throw Error(ErrorKind::MembershipViolation, "(" + std::to_string(b.s) + "," + std::to_string(b.a) + "," +
                                                  std::to_string(b.s2) + ") is not a branch");
}

TrellisSection build_section(FiniteGroup sigma, FiniteGroup alphabet, std::vector<Branch> branches, std::string name) {
  for (const Branch& b : branches) {
    if (b.s >= sigma.order() || b.s2 >= sigma.order() || b.a >= alphabet.order()) {
      throw Error(ErrorKind::Malformed, "branch (" + std::to_string(b.s) + "," + std::to_string(b.a) + "," +
                                            std::to_string(b.s2) + ") references an element out of range");
    }
  }
  std::sort(branches.begin(), branches.end());
  branches.erase(std::unique(branches.begin(), branches.end()), branches.end());
  if (branches.empty() || branches.front() != Branch{}) throw Error(ErrorKind::NotAGroup, "identity branch (0,0,0) missing");

  TrellisSection t(std::move(sigma), std::move(alphabet), std::move(branches), std::move(name));
  const auto& br = t.branches_;
  const std::size_t n = br.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Branch p{t.sigma_.mul(br[i].s, br[j].s), t.alphabet_.mul(br[i].a, br[j].a), t.sigma_.mul(br[i].s2, br[j].s2)};
      if (!t.find(p)) {
        throw Error(ErrorKind::NotAGroup, "product of branches " + std::to_string(i) + " and " + std::to_string(j) +
                                              " = (" + std::to_string(p.s) + "," + std::to_string(p.a) + "," +
                                              std::to_string(p.s2) + ") is not a branch");
      }
    }
  }
  t.group_ = FiniteGroup::from_trusted(n, [&](Element i, Element j) {
    return *t.find({t.sigma_.mul(br[i].s, br[j].s), t.alphabet_.mul(br[i].a, br[j].a), t.sigma_.mul(br[i].s2, br[j].s2)});
  });

  auto check_onto = [&](const char* coordinate, std::size_t order, auto project) {
    std::vector<char> hit(order, 0);
    for (const Branch& b : br) hit[project(b)] = 1;
    for (std::size_t x = 0; x < order; ++x) {
      if (!hit[x]) {
        throw Error(ErrorKind::NotSubdirect,
                    std::string(coordinate) + " projection misses element " + std::to_string(x));
      }
    }
  };
  check_onto("left state", t.sigma_.order(), [](const Branch& b) { return b.s; });
  check_onto("label", t.alphabet_.order(), [](const Branch& b) { return b.a; });
  check_onto("right state", t.sigma_.order(), [](const Branch& b) { return b.s2; });
  return t;
}

Subgroup splitting_kernel(const TrellisSection& t) {
  ElementSet out;
  for (Element b = 0; b < t.size(); ++b)
    if (t.left(b) == 0) out.push_back(b);
  return Subgroup::from_elements(t.group(), std::move(out));
}

Subgroup merging_kernel(const TrellisSection& t) {
  ElementSet out;
  for (Element b = 0; b < t.size(); ++b)
    if (t.right(b) == 0) out.push_back(b);
  return Subgroup::from_elements(t.group(), std::move(out));
}

ElementSet left_states(const TrellisSection& t, std::span<const Element> set) {
  std::vector<Element> out;
  for (Element b : set) out.push_back(t.left(b));
  return make_set(std::move(out));
}

ElementSet right_states(const TrellisSection& t, std::span<const Element> set) {
  std::vector<Element> out;
  for (Element b : set) out.push_back(t.right(b));
  return make_set(std::move(out));
}

ElementSet next_branch_set(const TrellisSection& t, Element b) {
  const Element b_single[] = {b};
  return next_of_set(t, b_single);
}

ElementSet previous_branch_set(const TrellisSection& t, Element b) {
  const Element b_single[] = {b};
  return prev_of_set(t, b_single);
}

ElementSet next_of_set(const TrellisSection& t, std::span<const Element> set) {
  std::vector<char> states(t.sigma().order(), 0);
  for (Element b : set) states[t.right(b)] = 1;
  ElementSet out;
  for (Element e = 0; e < t.size(); ++e)
    if (states[t.left(e)]) out.push_back(e);
  return out;
}

ElementSet prev_of_set(const TrellisSection& t, std::span<const Element> set) {
  std::vector<char> states(t.sigma().order(), 0);
  for (Element b : set) states[t.left(b)] = 1;
  ElementSet out;
  for (Element e = 0; e < t.size(); ++e)
    if (states[t.right(e)]) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------

const Subgroup& Chains::x(int j) const {
  if (j < -1) throw Error(ErrorKind::IndexOutOfRange, "X index " + std::to_string(j));
  if (j > ell_) return x_.back();
  return x_[j + 1];
}

const Subgroup& Chains::y(int i) const {
  if (i < -1) throw Error(ErrorKind::IndexOutOfRange, "Y index " + std::to_string(i));
  if (i > ell_) return y_.back();
  return y_[i + 1];
}

namespace {

// Returns [trivial, K_0, K_1, ..., K_ell] iterating `step`, and ell.
std::pair<std::vector<Subgroup>, int> grow_chain(const TrellisSection& t, Subgroup kernel,
                                                 ElementSet (*step)(const TrellisSection&, std::span<const Element>),
                                                 ElementSet (*far_states)(const TrellisSection&, std::span<const Element>),
                                                 const char* which) {
  const std::size_t all_states = t.sigma().order();
  std::vector<Subgroup> chain{Subgroup{}, std::move(kernel)};
  // ell is the least l >= 1 whose K_{l-1} reaches every state on its far side.
  while (far_states(t, chain.back().elements()).size() != all_states) {
    Subgroup next = Subgroup::from_elements(t.group(), step(t, chain.back().elements()));
    if (next == chain.back()) {
      throw Error(ErrorKind::NotControllable, std::string(which) + " chain stabilizes at order " +
                                                  std::to_string(next.size()) + " reaching " +
                                                  std::to_string(far_states(t, next.elements()).size()) + " of " +
                                                  std::to_string(all_states) + " states");
    }
    chain.push_back(std::move(next));
  }
  const int ell = static_cast<int>(chain.size()) - 1;  // chain holds K_{-1}..K_{ell-1}
  chain.push_back(Subgroup::from_elements(t.group(), step(t, chain.back().elements())));
  return {std::move(chain), ell};
}

}  // namespace

Chains compute_chains(const TrellisSection& t) {
  auto [xs, ell_x] = grow_chain(t, splitting_kernel(t), &next_of_set, &right_states, "splitting");
  auto [ys, ell_y] = grow_chain(t, merging_kernel(t), &prev_of_set, &left_states, "merging");
  if (ell_x != ell_y) {
    throw Error(ErrorKind::Inconsistent, "controllability index from splitting chain (" + std::to_string(ell_x) +
                                             ") differs from merging chain (" + std::to_string(ell_y) + ")");
  }
  if (xs.back().size() != t.size() || ys.back().size() != t.size()) {
    throw Error(ErrorKind::Inconsistent, "top of chain is not the whole branch group");
  }
  Chains c;
  c.ell_ = ell_x;
  c.x_ = std::move(xs);
  c.y_ = std::move(ys);
  return c;
}

// ---------------------------------------------------------------------------

bool PathSet::contains(const Path& p) const { return std::binary_search(paths.begin(), paths.end(), p); }

bool is_valid_path(const TrellisSection& t, std::span<const Element> path) {
  for (Element b : path)
    if (b >= t.size()) return false;
  for (std::size_t i = 1; i < path.size(); ++i)
    if (t.right(path[i - 1]) != t.left(path[i])) return false;
  return true;
}

namespace {

std::vector<std::vector<Element>> branches_by_left_state(const TrellisSection& t) {
  std::vector<std::vector<Element>> out(t.sigma().order());
  for (Element b = 0; b < t.size(); ++b) out[t.left(b)].push_back(b);
  return out;
}

// Depth-first extension of every start branch; `accept_last` filters the final branch.
PathSet walk(const TrellisSection& t, std::span<const Element> start, int k,
             const std::function<bool(Element)>& accept_last) {
  const auto by_left = branches_by_left_state(t);
  PathSet ps;
  ps.k = k;
  Path cur;
  std::function<void()> extend = [&]() {
    if (static_cast<int>(cur.size()) == k + 1) {
      if (accept_last(cur.back())) ps.paths.push_back(cur);
      return;
    }
    for (Element e : by_left[t.right(cur.back())]) {
      cur.push_back(e);
      extend();
      cur.pop_back();
    }
  };
  for (Element b : start) {
    cur.assign(1, b);
    extend();
  }
  std::sort(ps.paths.begin(), ps.paths.end());
  return ps;
}

}  // namespace

PathSet enumerate_segment_paths(const TrellisSection& t, const Chains& c, int k) {
  if (k < 0 || k > c.ell()) {
    throw Error(ErrorKind::IndexOutOfRange, "segment length index " + std::to_string(k) + " outside 0.." +
                                                std::to_string(c.ell()));
  }
  return walk(t, c.x(0).elements(), k, [&](Element last) { return t.right(last) == 0; });
}

PathSet paths_from(const TrellisSection& t, std::span<const Element> start, int k) {
  return walk(t, start, k, [](Element) { return true; });
}

ElementSet component_set(const PathSet& ps, int j) {
  std::vector<Element> out;
  for (const Path& p : ps.paths) out.push_back(p.at(static_cast<std::size_t>(j)));
  return make_set(std::move(out));
}

Pletty pletty(const TrellisSection& t, const Chains& c) {
  Pletty p;
  p.paths = paths_from(t, c.x(0).elements(), c.ell());
  for (int j = 0; j <= c.ell(); ++j) p.layers.push_back(component_set(p.paths, j));
  return p;
}

TrellisSection reverse_section(const TrellisSection& t) {
  std::vector<Branch> rev;
  rev.reserve(t.size());
  for (const Branch& b : t.branches()) rev.push_back({b.s2, b.a, b.s});
  std::string name = t.name().empty() ? std::string{} : t.name() + "-reversed";
  return build_section(t.sigma(), t.alphabet(), std::move(rev), std::move(name));
}

// ---------------------------------------------------------------------------

Path path_product(const TrellisSection& t, std::span<const Element> p, std::span<const Element> q) {
  Path out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = t.group().mul(p[i], q[i]);
  return out;
}

Path path_inverse(const TrellisSection& t, std::span<const Element> p) {
  Path out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = t.group().inv(p[i]);
  return out;
}

PathGroup PathGroup::from_paths(const TrellisSection& t, PathSet ps, std::size_t cap) {
  if (ps.paths.size() > cap) {
    throw Error(ErrorKind::TooLarge, std::to_string(ps.paths.size()) + " paths exceed the cap of " + std::to_string(cap));
  }
  std::sort(ps.paths.begin(), ps.paths.end());
  ps.paths.erase(std::unique(ps.paths.begin(), ps.paths.end()), ps.paths.end());
  const auto& paths = ps.paths;
  if (paths.empty() || std::any_of(paths.front().begin(), paths.front().end(), [](Element e) { return e != 0; })) {
    throw Error(ErrorKind::NotAGroup, "identity path missing");
  }
  std::map<Path, Element> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], static_cast<Element>(i));
  std::vector<Element> flat(paths.size() * paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      auto it = index.find(path_product(t, paths[i], paths[j]));
      if (it == index.end()) {
        throw Error(ErrorKind::NotAGroup, "path set not closed: product of paths " + std::to_string(i) + " and " +
                                              std::to_string(j));
      }
      flat[i * paths.size() + j] = it->second;
    }
  }
  const std::size_t n = paths.size();
  FiniteGroup g = FiniteGroup::from_trusted(n, [&](Element a, Element b) { return flat[a * n + b]; });
  return PathGroup(std::move(ps), std::move(g));
}

std::optional<Element> PathGroup::find(const Path& p) const {
  auto it = std::lower_bound(paths_.paths.begin(), paths_.paths.end(), p);
  if (it == paths_.paths.end() || *it != p) return std::nullopt;
  return static_cast<Element>(it - paths_.paths.begin());
}

ElementSet PathGroup::indices_of(const PathSet& ps) const {
  std::vector<Element> out;
  out.reserve(ps.paths.size());
  for (const Path& p : ps.paths) {
    auto i = find(p);
    if (!i) throw Error(ErrorKind::MembershipViolation, "path is not a member of the path group");
    out.push_back(*i);
  }
  return make_set(std::move(out));
}

}  // namespace gtrellis
