#include <doctest.h>

#include "gtrellis/fixtures.hpp"
#include "gtrellis/schreier.hpp"
#include "oracles.hpp"

using namespace gtrellis;

namespace {

ElementSet as_vec(const oracle::Set& s) { return {s.begin(), s.end()}; }

oracle::Set meet(const oracle::Set& a, const oracle::Set& b) {
  oracle::Set out;
  for (Element e : a)
    if (b.count(e)) out.insert(e);
  return out;
}

/// X_{j-1}(X_j ∩ Y_i) straight from reachability.
oracle::Set cell_oracle(const TrellisSection& t, int j, int i) {
  return oracle::product(t.group(), oracle::x_chain(t, j - 1), meet(oracle::x_chain(t, j), oracle::y_chain(t, i)));
}

std::vector<ControllableStructure> structures() {
  std::vector<ControllableStructure> out;
  for (const auto& f : fixtures::controllable_sections()) out.push_back(analyze_section(f.build()));
  return out;
}

}  // namespace

TEST_CASE("full matrix against reachability") {
  const TrellisSection b = fixtures::binary_register();
  const Chains cb = compute_chains(b);
  const SchreierMatrix mb = schreier_matrix(b, cb);
  CHECK(mb.cell(0, 1) == cb.x(0));

  const TrellisSection a = fixtures::memoryless_binary();
  const SchreierMatrix ma = schreier_matrix(a, compute_chains(a));
  for (int j = 0; j <= ma.ell(); ++j)
    for (int i = -1; i <= ma.ell(); ++i) CHECK((ma.cell(j, i).size() == 1 || ma.cell(j, i).size() == 2));

  for (const auto& f : fixtures::controllable_sections()) {
    const TrellisSection t = f.build();
    const Chains c = compute_chains(t);
    const SchreierMatrix m = schreier_matrix(t, c);
    for (int j = 0; j <= m.ell(); ++j)
      for (int i = -1; i <= m.ell(); ++i) {
        CHECK(m.cell(j, i).elements() == as_vec(cell_oracle(t, j, i)));
        const std::size_t n = m.cell(j, i).size();
        if (f.name == "two-stage-register") CHECK((n == 1 || n == 2 || n == 4 || n == 8));
      }
  }
}

TEST_CASE("controllable matrix") {
  for (const auto& s : structures()) {
    const TrellisSection& t = s.section;
    const int ell = s.ell();
    for (int j = 0; j <= ell; ++j) {
      CHECK(s.matrix.cell(j, j - 1) == s.chains.x(j - 1));
      CHECK(s.matrix.cell(j, ell) == s.chains.x(j));  // diagonal identity
      for (int k = j; k <= ell; ++k)
        CHECK(s.matrix.cell(j, k).elements() == as_vec(cell_oracle(t, j, k - j)));
    }
    CHECK(s.matrix.cell(ell + 1, ell).size() == t.size());
  }
  const ControllableStructure c = analyze_section(fixtures::two_stage_register());
  CHECK(c.matrix.cell(1, 2) == c.chains.x(1));
  CHECK(c.matrix.cell(2, 2) == c.chains.x(2));
}

TEST_CASE("shift property") {
  for (const auto& s : structures()) CHECK(verify_shift_property(s.section, s.matrix).ok);
  const ControllableStructure b = analyze_section(fixtures::binary_register());
  const ControllableMatrix broken = b.matrix.with_cell(0, 1, Subgroup{});
  const CheckResult r = verify_shift_property(b.section, broken);
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("(0,1)") != std::string::npos);
}

TEST_CASE("matrix read as a normal chain") {
  for (const auto& s : structures()) {
    CHECK(verify_normal_chain(s.section, s.matrix).ok);
    const auto chain = normal_chain_reading(s.matrix);
    REQUIRE_FALSE(chain.empty());
    CHECK(chain.front().is_trivial());
    CHECK(chain.back().size() == s.section.size());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      CHECK(is_subset(chain[i].elements(), chain[i + 1].elements()));
      CHECK(is_normal(s.group(), chain[i]));
    }
  }
}

TEST_CASE("quotient cells") {
  const FiniteGroup z2 = cyclic_group(2);
  const ControllableStructure b = analyze_section(fixtures::binary_register());
  CHECK(b.cells.order(0, 0) == 1);
  CHECK(are_isomorphic(b.cells.at(0, 1).quotient.group(), z2));
  CHECK(are_isomorphic(b.cells.at(1, 1).quotient.group(), z2));

  const ControllableStructure c = analyze_section(fixtures::two_stage_register());
  for (int k = 0; k <= 2; ++k)
    for (int j = 0; j <= k; ++j) CHECK(c.cells.order(j, k) == (k == 2 ? 2u : 1u));

  const ControllableStructure e = analyze_section(fixtures::product_section());
  CHECK(are_isomorphic(e.cells.at(0, 0).quotient.group(), z2));
  CHECK(are_isomorphic(e.cells.at(0, 1).quotient.group(), z2));
  CHECK(are_isomorphic(e.cells.at(1, 1).quotient.group(), z2));

  for (const auto& s : structures()) {
    CHECK(verify_row_isomorphism(s.cells).ok);
    std::size_t product = 1;
    for (int k = 0; k <= s.ell(); ++k)
      for (int j = 0; j <= k; ++j) {
        CHECK(s.cells.order(j, k) == s.cells.order(0, k));
        product *= s.cells.order(j, k);
      }
    CHECK(product == s.section.size());
  }
}

TEST_CASE("delta chain and cell generation") {
  for (const auto& s : structures()) {
    const TrellisSection& t = s.section;
    for (int k = -1; k <= s.ell(); ++k)
      CHECK(s.delta(k).elements() == as_vec(meet(oracle::x_chain(t, 0), oracle::y_chain(t, k))));
    CHECK(verify_cell_generation(t, s.chains, s.matrix).ok);
    // cell(j, k) is reached from Δ_k by j forward steps.
    for (int k = 0; k <= s.ell(); ++k)
      for (int j = 0; j <= k; ++j)
        CHECK(iterate_next(t, s.delta(k).elements(), j) == s.matrix.cell(j, k).elements());
  }
}

TEST_CASE("rectangle and second-isomorphism form") {
  for (const auto& s : structures()) {
    CHECK(verify_rectangle(s).ok);
    CHECK(verify_zassenhaus_form(s).ok);
  }
  const ControllableStructure big = analyze_section(fixtures::s3_register());
  CHECK(verify_rectangle(big).ok);
  CHECK(verify_zassenhaus_form(big).ok);
}

TEST_CASE("the dual matrix is the matrix of the reversed section") {
  for (const auto& s : structures()) {
    const TrellisSection r = reverse_section(s.section);
    const ControllableStructure sr = analyze_section(r);
    const ControllableMatrix dual = dual_controllable_matrix(s.section, s.chains);
    CHECK(sr.ell() == s.ell());
    for (int j = 0; j <= s.ell(); ++j)
      for (int k = j - 1; k <= s.ell(); ++k) {
        ElementSet mapped;
        for (Element e : dual.cell(j, k).elements()) {
          const Branch b = s.section.branch(e);
          mapped.push_back(r.index_of({b.s2, b.a, b.s}));
        }
        CHECK(make_set(mapped) == sr.matrix.cell(j, k).elements());
      }
  }
}

TEST_CASE("isomorphism checks above the cap fall back to orders") {
  const CheckResult r = check_isomorphic(cyclic_group(70), cyclic_group(70), "big");
  CHECK(r.ok);
  CHECK_FALSE(r.warnings.empty());
  CHECK_FALSE(check_isomorphic(cyclic_group(4), elementary_abelian_2(2), "small").ok);
}

TEST_CASE("rendered layouts") {
  const ControllableStructure b = analyze_section(fixtures::binary_register());
  const std::string text = render_controllable(b.matrix);
  CHECK_FALSE(text.empty());
  CHECK(text == render_controllable(analyze_section(fixtures::binary_register()).matrix));
  CHECK_FALSE(render_schreier(schreier_matrix(b.section, b.chains)).empty());
}
