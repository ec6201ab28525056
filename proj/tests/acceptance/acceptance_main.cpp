// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status counts unexpected outcomes only. Criteria listed in
// kKnownUnattainable still print FAIL with the reason; a PASS from one of them
// is reported too, so the list can be pruned.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gtrellis/encoder.hpp"
#include "gtrellis/expansion.hpp"
#include "gtrellis/fixtures.hpp"
#include "gtrellis/generators.hpp"
#include "gtrellis/shiftbank.hpp"
#include "oracles.hpp"

using namespace gtrellis;

namespace {

const std::set<int> kKnownUnattainable = {5};

/// Collects failed expectations for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void expect(const CheckResult& r, const std::string& what) { expect(r.ok, what + (r.ok ? "" : ": " + r.failure)); }
  void note(const std::string& text) { notes_.push_back(text); }

  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) os << (i ? "; " : "") << failures_[i];
    if (failures_.size() > 5) os << "; and " << failures_.size() - 5 << " more";
    for (const auto& n : notes_) os << (os.tellp() > 0 ? "; " : "") << n;
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Fixture {
  std::string name;
  ControllableStructure s;
  GeneratorBasis basis;
  explicit Fixture(const std::string& n) : name(n), s(analyze_section(fixtures::by_name(n))), basis(extract_generators(s)) {}
};

const std::vector<std::string> kAbelian = {"memoryless-binary", "binary-register", "two-stage-register", "product"};

std::mt19937& rng() {
  static std::mt19937 gen(20261015);
  return gen;
}

Path random_path_from(const TrellisSection& t, Element state, std::size_t length) {
  Path p;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<Element> out;
    for (Element b = 0; b < t.size(); ++b)
      if (t.left(b) == state) out.push_back(b);
    const Element b = out[rng()() % out.size()];
    p.push_back(b);
    state = t.right(b);
  }
  return p;
}

InputLabels random_input(const LabelShape& shape) {
  InputLabels u;
  for (int k = 0; k <= shape.ell(); ++k) u.push_back(rng()() % shape.row_size(k));
  return u;
}

std::vector<InputLabels> all_inputs(const LabelShape& shape) {
  std::vector<InputLabels> out{{}};
  for (int k = 0; k <= shape.ell(); ++k) {
    std::vector<InputLabels> next;
    for (const auto& prefix : out)
      for (std::size_t u = 0; u < shape.row_size(k); ++u) {
        auto v = prefix;
        v.push_back(u);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

std::string str(std::size_t n) { return std::to_string(n); }

// ---- 1 -------------------------------------------------------------------

void fixture_structure(Checker& c) {
  auto nontrivial_generators = [](const Fixture& f) {
    std::size_t n = 0;
    for (int k = 0; k <= f.s.ell(); ++k)
      for (std::size_t u = 1; u < f.basis.size(k); ++u) ++n;
    return n;
  };

  const Fixture b("binary-register");
  const TrellisSection& tb = b.s.section;
  c.expect(b.s.ell() == 1 && oracle::controllability_index(tb) == 1, "binary-register ell");
  c.expect(b.s.chains.x(0).size() == 2 && oracle::x_chain(tb, 0).size() == 2, "binary-register |X0|");
  c.expect(b.s.chains.y(0).size() == 2 && oracle::y_chain(tb, 0).size() == 2, "binary-register |Y0|");
  c.expect(granule(b.s, 1).order() == 2 && oracle::granule_cosets(tb, 1).size() == 2, "binary-register granule at k=1");
  c.expect(nontrivial_generators(b) == 1, "binary-register has " + str(nontrivial_generators(b)) + " nontrivial generators");

  const Fixture cc("two-stage-register");
  const TrellisSection& tc = cc.s.section;
  c.expect(cc.s.ell() == 2 && oracle::controllability_index(tc) == 2, "two-stage-register ell");
  for (int k = 0; k <= 2; ++k) {
    const std::size_t want = k == 2 ? 2 : 1;
    c.expect(granule(cc.s, k).order() == want && oracle::granule_cosets(tc, k).size() == want,
             "two-stage-register granule at k=" + std::to_string(k));
  }

  const Fixture e("product");
  const TrellisSection& te = e.s.section;
  for (int k = 0; k <= 1; ++k)
    c.expect(granule(e.s, k).order() == 2 && oracle::granule_cosets(te, k).size() == 2,
             "product granule at k=" + std::to_string(k));
  c.expect(granule(e.s, 1).boundary.size() == 4 && oracle::boundary_paths(te, 1).size() == 4,
           "product boundary subgroup at k=1");
}

// ---- 2 -------------------------------------------------------------------

void theorem_suite(Checker& c) {
  for (const auto& name : kAbelian) {
    const Fixture f(name);
    const ControllableStructure& s = f.s;
    const TrellisSection& t = s.section;
    for (int j = 0; j <= s.ell(); ++j) {
      const auto want = oracle::x_chain(t, j);
      c.expect(s.matrix.cell(j, s.ell()).elements() == ElementSet(want.begin(), want.end()),
               name + " diagonal identity at j=" + std::to_string(j));
    }
    c.expect(verify_shift_property(t, s.matrix), name + " shift property");
    c.expect(verify_normal_chain(t, s.matrix), name + " normal chain");
    c.expect(verify_cell_generation(t, s.chains, s.matrix), name + " cell generation");
    c.expect(verify_row_isomorphism(s.cells), name + " row isomorphism");
    c.expect(verify_rectangle(s), name + " rectangle");
    c.expect(verify_zassenhaus_form(s), name + " Zassenhaus form");
    c.expect(verify_granule_lambda_iso(s), name + " granule isomorphism");
    c.expect(verify_complete_system(s, f.basis), name + " complete system");
    c.expect(verify_reversed_transversal(s, f.basis), name + " reversed transversal");

    std::size_t cells = 1;
    for (int k = 0; k <= s.ell(); ++k)
      for (int j = 0; j <= k; ++j) cells *= s.cells.order(j, k);
    std::vector<int> hits(t.size(), 0);
    std::size_t arrays = 0;
    for_each_array(f.basis.shape(), [&](const LabelArray& u) {
      ++arrays;
      ++hits[compose(s.group(), f.basis, u)];
    });
    c.expect(arrays == t.size() && cells == t.size(), name + " label arrays " + str(arrays) + " vs |B| " + str(t.size()));
    c.expect(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }), name + " unique factorization");
  }
}

// ---- 3 -------------------------------------------------------------------

void encoder_properties(Checker& c) {
  for (const auto& named : fixtures::controllable_sections()) {
    const Fixture f(named.name);
    const Encoder enc(f.s, f.basis);
    const TrellisSection& t = f.s.section;
    const auto& name = f.name;

    for (int k = 0; k <= f.s.ell(); ++k)
      for (std::size_t u = 0; u < f.basis.size(k); ++u) {
        const auto out = impulse_response(enc, k, u, static_cast<std::size_t>(f.s.ell() + 3));
        Path want = f.basis.generator(k, u);
        want.resize(out.size(), 0);
        c.expect(out == want, name + " impulse response (" + std::to_string(k) + "," + str(u) + ")");
      }

    const auto states = reachable_states(enc);
    c.expect(states.size() == t.sigma().order(), name + " reachable states " + str(states.size()));

    for (int trial = 0; trial < 100; ++trial) {
      const Path p = random_path_from(t, static_cast<Element>(rng()() % t.sigma().order()), 20);
      const TrackResult tr = track(enc, p);
      const std::vector<EncoderInput> inputs(tr.inputs.begin(), tr.inputs.end());
      c.expect(enc.encode(tr.initial, inputs) == p, name + " encode after track");

      const EncoderState& start = states[rng()() % states.size()];
      std::vector<InputLabels> labels;
      for (int i = 0; i < 20; ++i) labels.push_back(random_input(enc.shape()));
      const auto out = enc.encode(start, std::vector<EncoderInput>(labels.begin(), labels.end()));
      const TrackResult back = track(enc, out);
      c.expect(back.initial == start && back.inputs == labels, name + " track after encode");
    }
  }

  // Paths leaving one branch differ at step j by an element of X_{j-1}.
  auto drift_ok = [](const ControllableStructure& s, const Path& p, const Path& q) {
    const auto& g = s.group();
    for (int j = 1; j <= s.ell(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (!s.chains.x(j - 1).contains(g.mul(g.inv(p[ju]), q[ju]))) return false;
    }
    return true;
  };
  const Fixture b("binary-register");
  std::size_t pairs = 0;
  for (Element b0 = 0; b0 < b.s.section.size(); ++b0) {
    const PathSet ps = paths_from(b.s.section, std::vector<Element>{b0}, b.s.ell());
    for (const Path& p : ps.paths)
      for (const Path& q : ps.paths) {
        ++pairs;
        c.expect(drift_ok(b.s, p, q), "binary-register drift");
      }
  }
  c.expect(pairs > 0, "binary-register drift pairs");
  const Fixture cc("two-stage-register");
  const TrellisSection& tc = cc.s.section;
  for (int trial = 0; trial < 500; ++trial) {
    const Element b0 = static_cast<Element>(rng()() % tc.size());
    const auto len = static_cast<std::size_t>(cc.s.ell());
    Path p{b0}, q{b0};
    for (Element x : random_path_from(tc, tc.right(b0), len)) p.push_back(x);
    for (Element x : random_path_from(tc, tc.right(b0), len)) q.push_back(x);
    c.expect(drift_ok(cc.s, p, q), "two-stage-register drift");
  }
}

// ---- 4 -------------------------------------------------------------------

void automorphisms(Checker& c) {
  struct Bank {
    std::string name;
    UBank bank;
    BigInt want;
  };
  const std::vector<Bank> banks = {
      {"binary-register", ubank_from_quotients(analyze_section(fixtures::binary_register()).cells), 2},
      {"two-stage-register", ubank_from_quotients(analyze_section(fixtures::two_stage_register()).cells), 2},
      {"sizes (2,2)", fixtures::bank_2_2(), 8},
  };
  for (const Bank& b : banks) {
    const BigInt count = count_automorphisms(b.bank);
    const auto all = enumerate_automorphisms(b.bank);
    c.expect(count == b.want && BigInt(all.size()) == count,
             b.name + " count " + count.str() + ", enumerated " + str(all.size()));
    c.expect(count == oracle::automorphism_formula(b.bank.shape.row_sizes()), b.name + " formula oracle");
    const BankGraph g = build_graph(b.bank);
    std::set<std::vector<std::size_t>> maps;
    for (const auto& a : all) {
      c.expect(is_graph_automorphism(g, a.edge_map()), b.name + " endpoint check");
      maps.insert(a.edge_map());
    }
    for (const auto& x : maps) {
      c.expect(maps.count(invert_edge_map(x)) == 1, b.name + " closed under inverse");
      for (const auto& y : maps) c.expect(maps.count(compose_edge_maps(x, y)) == 1, b.name + " closed under composition");
    }
  }

  auto parallel_free = [](const BankGraph& g) {
    std::set<std::pair<std::size_t, std::size_t>> arcs;
    for (std::size_t e = 0; e < g.edges(); ++e) arcs.insert({g.tail[e], g.head[e]});
    return arcs.size() == g.edges();
  };
  const BankGraph gb = build_graph(banks[0].bank);
  const BigInt brute_b = brute_force_graph_automorphisms(gb);
  c.expect(parallel_free(gb), "binary-register bank has parallel edges");
  c.expect(brute_b == 2 && brute_b == oracle::multigraph_automorphisms(gb.nodes, gb.tail, gb.head),
           "binary-register plain graph count " + brute_b.str());
  const BankGraph g22 = build_graph(banks[2].bank);
  const BigInt brute_22 = brute_force_graph_automorphisms(g22);
  c.expect(!parallel_free(g22), "sizes (2,2) bank lacks parallel edges");
  c.expect(brute_22 == 32 && brute_22 >= count_automorphisms(banks[2].bank) &&
               brute_22 == oracle::multigraph_automorphisms(g22.nodes, g22.tail, g22.head),
           "sizes (2,2) plain graph count " + brute_22.str());
}

// ---- 5 -------------------------------------------------------------------

void generator_bases(Checker& c) {
  struct Want {
    const char* name;
    int bases;
    int bound;
  };
  for (const Want& w : {Want{"binary-register", 1, 2}, Want{"two-stage-register", 1, 2}, Want{"product", 4, 8}}) {
    const ControllableStructure s = analyze_section(fixtures::by_name(w.name));
    const BasisCount n = count_generator_bases(s);
    std::size_t brute = 1;
    for (int k = 0; k <= s.ell(); ++k) {
      const auto cosets = oracle::granule_cosets(s.section, k);
      for (std::size_t i = 1; i < cosets.size(); ++i) brute *= cosets[i].size();
    }
    c.expect(n.count == w.bases && n.count == brute, std::string(w.name) + " basis count " + n.count.str());
    c.expect(n.aut_bound == w.bound && n.count <= n.aut_bound, std::string(w.name) + " bound " + n.aut_bound.str());
  }

  const ControllableStructure e = analyze_section(fixtures::product_section());
  const GeneratorBasis lex = extract_generators(e, lex_chooser());
  const GeneratorBasis revlex = extract_generators(e, revlex_chooser());
  try {
    change_of_basis(e, lex, revlex);
  } catch (const Error& err) {
    c.expect(false, std::string("product lex to revlex: ") + err.what());
    // Why it cannot succeed: the greatest row-1 representative differs from
    // the least by a row-0 branch, so the new (0,0) label is old (0,0) + (0,1) + (1,1).
    // It reads (0,1), a cell of the same epoch, which later-column memory excludes.
    try {
      const BasisChangeMap wide = change_of_basis(e, lex, revlex, MemoryKey::LaterColumnsAndSameEpoch);
      const UBank bank = ubank_from_quotients(e.cells);
      const auto row_keyed = enumerate_automorphisms(bank);
      const bool listed = std::any_of(row_keyed.begin(), row_keyed.end(),
                                      [&](const BankAutomorphism& a) { return a.edge_map() == wide.edge_map; });
      c.note(std::string("new (0,0) label reads old (0,1) of the same epoch; with same-epoch memory the map is ") +
             (is_graph_automorphism(build_graph(bank), wide.edge_map) ? "a graph automorphism" : "not a graph automorphism") +
             (listed ? " in the enumerated set" : " outside the enumerated set"));
    } catch (const Error& again) {
      c.note(std::string("same-epoch memory also fails: ") + again.what());
    }
  }
}

// ---- 6 -------------------------------------------------------------------

void class_groups(Checker& c) {
  const NormalChain xb = splitting_normal_chain(analyze_section(fixtures::binary_register()));
  for (const auto& [name, chain] : {std::pair<std::string, NormalChain>{"S3 chain", fixtures::s3_chain()},
                                    std::pair<std::string, NormalChain>{"binary-register X-chain", xb}}) {
    const FiniteGroup& g = chain.group();
    c.expect(verify_class_group(chain), name + " class group");
    std::vector<oracle::Set> levels;
    for (int j = 0; j <= chain.ell(); ++j) {
      const auto& el = chain.level(j).elements();
      levels.emplace_back(el.begin(), el.end());
    }
    std::vector<ExpansionVector> all;
    for (Element x = 0; x < g.order(); ++x) {
      auto mine = expansion_class(chain, x);
      auto want = oracle::expansion_class(g, levels, x);
      std::sort(mine.begin(), mine.end());
      std::sort(want.begin(), want.end());
      c.expect(mine == want, name + " class of " + std::to_string(x));
      all.insert(all.end(), mine.begin(), mine.end());
    }
    // Exhaustive: contraction is a homomorphism and the product is associative.
    for (const auto& x : all)
      for (const auto& y : all) {
        const auto xy = otimes(chain, x, y);
        c.expect(contract(g, xy) == g.mul(contract(g, x), contract(g, y)), name + " contraction homomorphism");
        for (const auto& z : all)
          c.expect(otimes(chain, xy, z) == otimes(chain, x, otimes(chain, y, z)), name + " associativity");
      }
  }
  // On an abelian branch group the twisted product is componentwise.
  const FiniteGroup& gb = xb.group();
  std::vector<ExpansionVector> all;
  for (Element x = 0; x < gb.order(); ++x)
    for (auto& v : expansion_class(xb, x)) all.push_back(v);
  for (const auto& x : all)
    for (const auto& y : all) {
      ExpansionVector plain(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) plain[j] = gb.mul(x[j], y[j]);
      c.expect(otimes(xb, x, y) == plain, "binary-register abelian degeneration");
    }
}

// ---- 7 -------------------------------------------------------------------

void duality(Checker& c) {
  for (const auto& name : kAbelian) {
    const Fixture f(name);
    const Encoder enc(f.s, f.basis);
    const auto inputs = all_inputs(enc.shape());
    std::size_t sequences = 0;
    for (std::size_t len = 0; len <= 4; ++len) {
      std::vector<std::size_t> digits(len, 0);
      for (;;) {
        std::vector<EncoderInput> seq;
        for (std::size_t d : digits) seq.emplace_back(inputs[d]);
        ++sequences;
        c.expect(enc.encode(enc.initial_state(), seq) == enc.encode_row_column(enc.initial_state(), seq),
                 name + " orderings disagree");
        std::size_t i = 0;
        while (i < len && ++digits[i] == inputs.size()) digits[i++] = 0;
        if (i == len) break;
      }
    }
    const DualityReport d = verify_duality(f.s, f.basis);
    c.expect(d.abelian && d.agree(), name + " product orderings");
    c.expect(sequences > 1, name + " no sequences");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
      {"fixture structure", fixture_structure}, {"theorem suite", theorem_suite},
      {"encoder", encoder_properties},         {"automorphisms", automorphisms},
      {"generator bases", generator_bases},     {"expansion class group", class_groups},
      {"duality", duality},
  };
  int unexpected = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Checker c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const bool known = kKnownUnattainable.count(id) > 0;
    std::cout << (c.ok() ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first;
    const std::string detail = c.summary();
    if (!detail.empty()) std::cout << ": " << detail;
    if (known) std::cout << (c.ok() ? " (listed as unattainable, now passes)" : " (known unattainable)");
    std::cout << "\n";
    if (!c.ok() && !known) ++unexpected;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cout << "elapsed " << ms.count() << " ms, unexpected failures " << unexpected << "\n";
  return unexpected == 0 ? 0 : 1;
}
