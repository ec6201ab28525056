#include "gtrellis/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtrellis/encoder.hpp"
#include "gtrellis/expansion.hpp"
#include "gtrellis/fixtures.hpp"
#include "gtrellis/generators.hpp"
#include "gtrellis/io.hpp"
#include "gtrellis/shiftbank.hpp"
#include "json.hpp"

namespace gtrellis {

namespace {

using Report = nlohmann::ordered_json;

struct Options {
  std::string chooser = "lex";
  std::size_t max_enum = kDefaultAutomorphismCap;
  std::string report = "text";
  std::string file;
  std::string fixture;
  std::vector<std::size_t> sizes;
  bool list = false;
  bool labels = false;
  bool corrupt = false;
  std::int64_t element = 0;
};

/// Thrown for unreadable lines of an encode/track stream.
struct StreamError {
  std::string what;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotControllable:
      return kExitNotControllable;
    case ErrorKind::InvalidPath:
    case ErrorKind::InputNotInX0:
      return kExitBadSymbol;
    case ErrorKind::DiagonalIdentityFailed:
      return kExitCheckFailed;
    case ErrorKind::Malformed:
    case ErrorKind::NotClosed:
    case ErrorKind::NotAssociative:
    case ErrorKind::NoIdentityAtZero:
    case ErrorKind::NoInverse:
    case ErrorKind::NotASubgroup:
    case ErrorKind::NotNormal:
    case ErrorKind::NotAGroup:
    case ErrorKind::NotSubdirect:
      return kExitInvalidSection;
    default:
      return kExitOther;
  }
}

std::string big(const BigInt& n) { return n.str(); }

// Text rendering of a report: "key: value" per scalar, space-separated flat
// arrays, and indented blocks for anything nested.
void render_value(std::ostream& out, const Report& v, int indent);

bool is_flat(const Report& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Report& x) { return x.is_primitive(); });
}

std::string scalar(const Report& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string flat_line(const Report& v) {
  const bool words = std::any_of(v.begin(), v.end(), [](const Report& x) { return x.is_string(); });
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : words ? "; " : " ") + scalar(x);
  return s;
}

void render_value(std::ostream& out, const Report& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, x] : v.items()) {
      if (x.is_primitive()) {
        out << pad << key << ": " << scalar(x) << "\n";
      } else if (is_flat(x)) {
        out << pad << key << ": " << flat_line(x) << "\n";
      } else {
        out << pad << key << ":\n";
        render_value(out, x, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_primitive()) {
        out << pad << scalar(x) << "\n";
      } else if (is_flat(x)) {
        out << pad << flat_line(x) << "\n";
      } else {
        out << pad << "-\n";
        render_value(out, x, indent + 2);
      }
    }
  } else {
    out << pad << scalar(v) << "\n";
  }
}

void emit(std::ostream& out, const Options& opt, const Report& r) {
  if (opt.report == "machine") {
    out << r.dump() << "\n";
  } else {
    render_value(out, r, 0);
  }
}

PathChooser chooser_of(const Options& opt) { return opt.chooser == "revlex" ? revlex_chooser() : lex_chooser(); }

TrellisSection load_section(const Options& opt) {
  if (!opt.fixture.empty()) {
    try {
      return fixtures::by_name(opt.fixture);
    } catch (const Error&) {
      throw ParseError("unknown fixture '" + opt.fixture + "'");
    }
  }
  if (opt.file.empty()) throw ParseError("no section file given");
  return read_section_file(opt.file);
}

// ---- validate ------------------------------------------------------------

int cmd_validate(const Options& opt, std::ostream& out) {
  const TrellisSection t = load_section(opt);
  Report r;
  r["status"] = "valid";
  if (!t.name().empty()) r["name"] = t.name();
  r["sigma"] = t.sigma().order();
  r["alphabet"] = t.alphabet().order();
  r["branches"] = t.size();
  r["subdirect"] = true;
  if (opt.report == "machine") {
    emit(out, opt, r);
  } else {
    out << "valid, |Σ|=" << t.sigma().order() << ", |A|=" << t.alphabet().order() << ", |B|=" << t.size()
        << ", subdirect\n";
  }
  return kExitOk;
}

// ---- analyze -------------------------------------------------------------

Report basis_change_summary(const ControllableStructure& s) {
  const GeneratorBasis lex = extract_generators(s, lex_chooser());
  const GeneratorBasis revlex = extract_generators(s, revlex_chooser());
  Report r;
  try {
    const BasisChangeMap m = change_of_basis(s, lex, revlex, MemoryKey::LaterColumns);
    r["later_column_key"] = m.is_identity() ? "consistent, identity" : "consistent";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    r["later_column_key"] = "inconsistent";
  }
  try {
    const BasisChangeMap m = change_of_basis(s, lex, revlex, MemoryKey::LaterColumnsAndSameEpoch);
    r["same_epoch_key"] = m.is_identity() ? "consistent, identity" : "consistent";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconsistent) throw;
    r["same_epoch_key"] = "inconsistent";
  }
  return r;
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const ControllableStructure s = analyze_section(load_section(opt));
  const int ell = s.ell();
  Report r;
  if (!s.section.name().empty()) r["name"] = s.section.name();
  r["sigma"] = s.section.sigma().order();
  r["alphabet"] = s.section.alphabet().order();
  r["branches"] = s.section.size();
  r["ell"] = ell;

  Report xs = Report::array(), ys = Report::array();
  for (int j = 0; j <= ell; ++j) {
    xs.push_back(s.chains.x(j).size());
    ys.push_back(s.chains.y(j).size());
  }
  r["splitting_chain"] = xs;
  r["merging_chain"] = ys;

  // Row k lists columns j = 0..k.
  Report cells = Report::array(), quotients = Report::array();
  for (int k = 0; k <= ell; ++k) {
    Report c = Report::array(), q = Report::array();
    for (int j = 0; j <= k; ++j) {
      c.push_back(s.matrix.cell(j, k).size());
      q.push_back(s.cells.order(j, k));
    }
    cells.push_back(c);
    quotients.push_back(q);
  }
  r["matrix_cells"] = cells;
  r["quotient_cells"] = quotients;

  Report granules = Report::array(), boundaries = Report::array();
  for (int k = 0; k <= ell; ++k) {
    const Granule g = granule(s, k);
    granules.push_back(g.order());
    boundaries.push_back(g.boundary.size());
  }
  r["granules"] = granules;
  r["granule_boundaries"] = boundaries;

  const GeneratorBasis basis = extract_generators(s, chooser_of(opt));
  Report gens = Report::array();
  for (int k = 0; k <= ell; ++k) {
    for (std::size_t u = 1; u < basis.size(k); ++u) {
      Report g;
      g["row"] = k;
      g["label"] = u;
      g["path"] = basis.generator(k, u);
      gens.push_back(g);
    }
  }
  r["generators"] = gens;

  const UBank bank = ubank_from_quotients(s.cells);
  const BigInt count = count_automorphisms(bank);
  r["automorphisms"] = big(count);
  if (count <= opt.max_enum) {
    r["enumerated"] = enumerate_automorphisms(bank, opt.max_enum).size();
  } else {
    r["enumerated"] = "skipped";
  }
  try {
    r["multigraph_automorphisms"] = big(brute_force_graph_automorphisms(build_graph(bank)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    r["multigraph_automorphisms"] = "skipped";
  }
  try {
    r["generator_bases"] = big(count_generator_bases(s).count);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    r["generator_bases"] = "skipped";
  }
  r["basis_change_lex_to_revlex"] = basis_change_summary(s);
  emit(out, opt, r);
  return kExitOk;
}

// ---- encode / track ------------------------------------------------------

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> t;
  for (std::string w; ss >> w;) t.push_back(w);
  return t;
}

std::size_t number(const std::string& tok, std::size_t line_no) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw StreamError{"line " + std::to_string(line_no) + ": bad symbol '" + tok + "'"};
  }
  return v;
}

void check_label(const LabelShape& shape, int k, std::size_t v, std::size_t line_no) {
  if (v >= shape.row_size(k)) {
    throw StreamError{"line " + std::to_string(line_no) + ": label " + std::to_string(v) + " out of range for row " +
                      std::to_string(k)};
  }
}

int cmd_encode(const Options& opt, std::istream& in, std::ostream& out) {
  const ControllableStructure s = analyze_section(load_section(opt));
  const GeneratorBasis basis = extract_generators(s, chooser_of(opt));
  const Encoder enc(s, basis);
  const LabelShape& shape = enc.shape();
  const int ell = shape.ell();

  EncoderState state = enc.initial_state();
  bool first = true;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.front() == "state") {
      if (!first) throw StreamError{"line " + std::to_string(line_no) + ": state must come first"};
      first = false;
      if (tok.size() - 1 != shape.cell_count() - static_cast<std::size_t>(ell + 1)) {
        throw StreamError{"line " + std::to_string(line_no) + ": wrong number of state labels"};
      }
      LabelArray w(shape);
      std::size_t i = 1;
      for (int j = 1; j <= ell; ++j) {
        for (int k = j; k <= ell; ++k) {
          const std::size_t v = number(tok[i++], line_no);
          check_label(shape, k, v, line_no);
          w.at(j, k) = v;
        }
      }
      state = EncoderState{w};
      continue;
    }
    first = false;
    EncoderInput input;
    if (opt.labels) {
      if (tok.size() != static_cast<std::size_t>(ell + 1)) {
        throw StreamError{"line " + std::to_string(line_no) + ": expected " + std::to_string(ell + 1) + " labels"};
      }
      InputLabels u;
      for (int k = 0; k <= ell; ++k) {
        u.push_back(number(tok[static_cast<std::size_t>(k)], line_no));
        check_label(shape, k, u.back(), line_no);
      }
      input = std::move(u);
    } else {
      if (tok.size() != 1) throw StreamError{"line " + std::to_string(line_no) + ": expected one branch index"};
      const std::size_t b = number(tok[0], line_no);
      if (b >= s.section.size() || !s.chains.x(0).contains(static_cast<Element>(b))) {
        throw StreamError{"line " + std::to_string(line_no) + ": branch " + tok[0] + " does not leave the identity state"};
      }
      input = static_cast<Element>(b);
    }
    const StepResult st = enc.step(state, input);
    out << st.branch << "\n";
    state = st.next;
  }
  return kExitOk;
}

int cmd_track(const Options& opt, std::istream& in, std::ostream& out) {
  const ControllableStructure s = analyze_section(load_section(opt));
  const GeneratorBasis basis = extract_generators(s, chooser_of(opt));
  const Encoder enc(s, basis);
  const LabelShape& shape = enc.shape();
  const int ell = shape.ell();

  std::vector<Element> path;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.size() != 1) throw StreamError{"line " + std::to_string(line_no) + ": expected one branch index"};
    const std::size_t b = number(tok[0], line_no);
    if (b >= s.section.size()) throw StreamError{"line " + std::to_string(line_no) + ": no branch " + tok[0]};
    path.push_back(static_cast<Element>(b));
  }
  if (path.empty()) return kExitOk;

  const TrackResult tr = track(enc, path);
  if (!tr.initial.window.is_zero()) {
    out << "state";
    for (int j = 1; j <= ell; ++j)
      for (int k = j; k <= ell; ++k) out << " " << tr.initial.window.at(j, k);
    out << "\n";
  }
  for (const InputLabels& u : tr.inputs) {
    if (opt.labels) {
      for (std::size_t k = 0; k < u.size(); ++k) out << (k ? " " : "") << u[k];
      out << "\n";
    } else {
      out << compose(s.group(), basis, LabelArray(shape).with_column0(u)) << "\n";
    }
  }
  return kExitOk;
}

// ---- aut -----------------------------------------------------------------

int cmd_aut(const Options& opt, std::ostream& out) {
  UBank bank;
  if (!opt.sizes.empty()) {
    bank = make_bank(opt.sizes);
  } else {
    bank = ubank_from_quotients(analyze_section(load_section(opt)).cells);
  }
  Report r;
  r["row_sizes"] = bank.shape.row_sizes();
  const BigInt count = count_automorphisms(bank);
  r["automorphisms"] = big(count);
  std::vector<BankAutomorphism> all;
  if (count <= opt.max_enum) {
    all = enumerate_automorphisms(bank, opt.max_enum);
    r["enumerated"] = all.size();
  } else {
    r["enumerated"] = "skipped";
  }
  try {
    r["multigraph_automorphisms"] = big(brute_force_graph_automorphisms(build_graph(bank)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    r["multigraph_automorphisms"] = "skipped";
  }
  if (opt.list && !all.empty()) {
    // One line per (row, memory key) of each automorphism: the label permutation.
    Report list = Report::array();
    for (const BankAutomorphism& a : all) {
      Report lines = Report::array();
      const auto& rows = a.tables().rows;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        for (std::size_t key = 0; key < rows[k].size(); ++key) {
          std::string line = "row " + std::to_string(k) + " key";
          const auto labels = key_unrank(bank.shape, static_cast<int>(k), key);
          if (labels.empty()) line += " -";
          for (std::size_t x : labels) line += " " + std::to_string(x);
          line += ":";
          for (std::size_t x : rows[k][key]) line += " " + std::to_string(x);
          lines.push_back(line);
        }
      }
      list.push_back(lines);
    }
    r["separating_permutations"] = list;
  }
  emit(out, opt, r);
  return kExitOk;
}

// ---- expand / classcheck -------------------------------------------------

NormalChain load_chain(const Options& opt) {
  GroupDocument doc = read_group_file(opt.file);
  if (doc.chain.empty()) throw ParseError("group document has no chain");
  return NormalChain::make(std::move(doc.group), std::move(doc.chain));
}

int cmd_expand(const Options& opt, std::ostream& out, std::ostream& err) {
  const NormalChain chain = load_chain(opt);
  if (opt.element < 0 || static_cast<std::size_t>(opt.element) >= chain.group().order()) {
    err << "element " << opt.element << " is not in the group\n";
    return kExitBadSymbol;
  }
  const ExpansionBasis basis = make_basis(chain);
  const ExpansionVector x = expand(chain, basis, static_cast<Element>(opt.element));
  Report r;
  r["element"] = opt.element;
  r["expansion"] = x;
  emit(out, opt, r);
  return kExitOk;
}

int cmd_classcheck(const Options& opt, std::ostream& out) {
  const NormalChain chain = load_chain(opt);
  const CheckResult c = verify_class_group(chain);
  Report r;
  r["group"] = chain.group().order();
  r["ell"] = chain.ell();
  r["class_group"] = c.ok ? "PASS" : "FAIL";
  if (!c.ok) r["failure"] = c.failure;
  emit(out, opt, r);
  return c.ok ? kExitOk : kExitCheckFailed;
}

// ---- verify --------------------------------------------------------------

GeneratorBasis corrupted(const GeneratorBasis& basis) {
  // The first nonidentity generator's leading component becomes the identity
  // branch, so two labels of its cell land in the same coset.
  for (int k = 0; k <= basis.ell(); ++k)
    if (basis.size(k) > 1) return basis.with_component(0, k, 1, 0);
  return basis;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const ControllableStructure s = analyze_section(load_section(opt));
  GeneratorBasis basis = extract_generators(s, chooser_of(opt));
  if (opt.corrupt) basis = corrupted(basis);

  Report results = Report::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, const std::function<CheckResult()>& run) {
    CheckResult c;
    bool skipped = false;
    try {
      c = run();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::TooLarge) {
        skipped = true;
        c.warnings.push_back(e.what());
      } else {
        c = CheckResult::fail(e.what());
      }
    }
    Report row;
    row["theorem"] = name;
    row["status"] = !c.ok ? "FAIL" : skipped ? "SKIP" : "PASS";
    if (!c.ok) row["detail"] = c.failure;
    else if (!c.warnings.empty()) row["detail"] = c.warnings.front();
    all_ok = all_ok && c.ok;
    results.push_back(row);
  };

  record("diagonal identity", [&] {
    CheckResult r;
    for (int j = 0; j <= s.ell() && r.ok; ++j) {
      if (s.matrix.cell(j, s.ell()) != s.chains.x(j)) {
        r.ok = false;
        r.failure = "cell (" + std::to_string(j) + "," + std::to_string(s.ell()) + ") differs from X_" + std::to_string(j);
      }
    }
    return r;
  });
  record("shift property", [&] { return verify_shift_property(s.section, s.matrix); });
  record("normal chain", [&] { return verify_normal_chain(s.section, s.matrix); });
  record("cell generation", [&] { return verify_cell_generation(s.section, s.chains, s.matrix); });
  record("row isomorphism", [&] { return verify_row_isomorphism(s.cells); });
  record("rectangle", [&] { return verify_rectangle(s); });
  record("zassenhaus form", [&] { return verify_zassenhaus_form(s); });
  record("complete system", [&] { return verify_complete_system(s, basis); });
  record("span property", [&] { return verify_span_property(s, basis); });
  record("reversed transversal", [&] { return verify_reversed_transversal(s, basis); });
  record("granule lambda iso", [&] { return verify_granule_lambda_iso(s); });
  record("duality", [&] {
    const DualityReport d = verify_duality(s, basis);
    if (d.abelian && !d.agree()) {
      return CheckResult::fail(std::to_string(d.differing.size()) + " of " + std::to_string(d.checked) +
                               " label arrays give different outputs");
    }
    CheckResult c;
    if (!d.abelian) {
      c.warnings.push_back("nonabelian branch group; orderings differ on " + std::to_string(d.differing.size()) +
                           " of " + std::to_string(d.checked) + " arrays");
    }
    return c;
  });
  record("class group", [&] { return verify_class_group(splitting_normal_chain(s)); });

  if (opt.report == "machine") {
    Report r;
    r["results"] = results;
    r["ok"] = all_ok;
    out << r.dump() << "\n";
  } else {
    for (const auto& row : results) {
      out << row["status"].get<std::string>() << " " << row["theorem"].get<std::string>();
      if (row.contains("detail")) out << ": " << row["detail"].get<std::string>();
      out << "\n";
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group trellis sections: structure, encoders, automorphisms", "gtrellis"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--basis-chooser", opt.chooser, "Generator representative per granule coset")
      ->check(CLI::IsMember({"lex", "revlex"}));
  app.add_option("--max-enum", opt.max_enum, "Largest automorphism count to enumerate");
  app.add_option("--report", opt.report, "Report format")->check(CLI::IsMember({"text", "machine"}));

  auto* validate = app.add_subcommand("validate", "Check a section file");
  validate->add_option("file", opt.file)->required();

  auto* analyze = app.add_subcommand("analyze", "Chains, matrix, quotients, generators and automorphism counts");
  analyze->add_option("file", opt.file)->required();

  auto* encode = app.add_subcommand("encode", "Branch stream for inputs read from standard input");
  encode->add_option("file", opt.file)->required();
  encode->add_flag("--labels", opt.labels, "Inputs are label columns instead of branch indices");

  auto* track_cmd = app.add_subcommand("track", "Inputs reproducing a branch path read from standard input");
  track_cmd->add_option("file", opt.file)->required();
  track_cmd->add_flag("--labels", opt.labels, "Emit label columns instead of branch indices");

  auto* aut = app.add_subcommand("aut", "Automorphisms of the shift-register bank");
  aut->add_option("file", opt.file);
  aut->add_option("--sizes", opt.sizes, "Row sizes of a synthetic bank")->delimiter(',');
  aut->add_flag("--list", opt.list, "Print separating permutations of each automorphism");

  auto* expand_cmd = app.add_subcommand("expand", "Expansion vector of a group element along a chain");
  expand_cmd->add_option("file", opt.file)->required();
  expand_cmd->add_option("--element", opt.element)->required();

  auto* classcheck = app.add_subcommand("classcheck", "Check that expansion classes form a group");
  classcheck->add_option("file", opt.file)->required();

  auto* verify = app.add_subcommand("verify", "Run the theorem suite");
  verify->add_option("file", opt.file);
  verify->add_option("--fixture", opt.fixture, "Built-in section instead of a file");
  verify->add_flag("--corrupt-basis", opt.corrupt, "Damage one generator before checking");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  if (aut->parsed() && opt.file.empty() && opt.sizes.empty()) {
    err << "aut: give a section file or --sizes\n";
    return kExitParse;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, out);
    if (analyze->parsed()) return cmd_analyze(opt, out);
    if (encode->parsed()) return cmd_encode(opt, in, out);
    if (track_cmd->parsed()) return cmd_track(opt, in, out);
    if (aut->parsed()) return cmd_aut(opt, out);
    if (expand_cmd->parsed()) return cmd_expand(opt, out, err);
    if (classcheck->parsed()) return cmd_classcheck(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
  } catch (const StreamError& e) {
    err << e.what << "\n";
    return kExitBadSymbol;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace gtrellis
