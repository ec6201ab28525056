#include <doctest.h>

#include <random>

#include "gtrellis/fixtures.hpp"
#include "gtrellis/group.hpp"
#include "oracles.hpp"

using namespace gtrellis;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Malformed;
}

ElementSet as_vec(const oracle::Set& s) { return {s.begin(), s.end()}; }

// S3 indices from the fixture: 0 = e, 1 = (123), 2 = (132), 3 = (12), 4 = (13), 5 = (23).
constexpr Element kCycle = 1;
constexpr Element kSwap = 3;

}  // namespace

TEST_CASE("tables that are groups") {
  CHECK(validate_group({{0}}).order() == 1);
  const FiniteGroup z2 = validate_group({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inv(1) == 1);
  CHECK(z2 == cyclic_group(2));
}

TEST_CASE("tables that are not groups") {
  CHECK(kind_of([] { validate_group({{0, 1}, {1, 1}}); }) == ErrorKind::NotClosed);
  CHECK(kind_of([] { validate_group({{1, 0}, {0, 1}}); }) == ErrorKind::NoIdentityAtZero);
  CHECK(kind_of([] { validate_group({{0, 1}, {1}}); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { validate_group({}); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { validate_group({{0, 2}, {2, 0}}); }) == ErrorKind::NotClosed);  // entry outside the set
  // A Latin square with identity 0 that is not associative (a loop of order 5).
  const std::vector<std::vector<std::int64_t>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(kind_of([&] { validate_group(loop); }) == ErrorKind::NotAssociative);
  // Another loop of order 5 where 2 has right inverse 3 but 3 * 2 = 1.
  const std::vector<std::vector<std::int64_t>> lopsided = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0}, {4, 2, 0, 1, 3}};
  CHECK(kind_of([&] { validate_group(lopsided); }) == ErrorKind::NoInverse);
}

TEST_CASE("every 3x3 table is accepted exactly when it is a group") {
  std::vector<std::vector<std::int64_t>> t(3, std::vector<std::int64_t>(3));
  int accepted = 0;
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (auto& row : t)
      for (auto& x : row) {
        x = c % 3;
        c /= 3;
      }
    bool ok = true;
    try {
      validate_group(t);
    } catch (const Error&) {
      ok = false;
    }
    CHECK(ok == oracle::is_group(t));
    accepted += ok;
  }
  CHECK(accepted == 1);  // Z3 is the only group of order 3 with identity 0
}

TEST_CASE("sampled 4x4 Latin-ish tables agree with the oracle") {
  std::mt19937 rng(7);
  std::vector<std::vector<std::int64_t>> t(4, std::vector<std::int64_t>(4));
  for (int trial = 0; trial < 3000; ++trial) {
    for (int i = 0; i < 4; ++i) {
      t[0][i] = i;
      t[i][0] = i;
    }
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j) t[i][j] = static_cast<std::int64_t>(rng() % 4);
    bool ok = true;
    try {
      validate_group(t);
    } catch (const Error&) {
      ok = false;
    }
    CHECK(ok == oracle::is_group(t));
  }
}

TEST_CASE("closure") {
  const FiniteGroup z2 = cyclic_group(2), z4 = cyclic_group(4), s3 = fixtures::s3();
  CHECK(subgroup_closure(z2, {}).elements() == ElementSet{0});
  CHECK(subgroup_closure(s3, std::vector<Element>{kCycle}).size() == 3);
  CHECK(subgroup_closure(z4, std::vector<Element>{2}).elements() == ElementSet{0, 2});
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) {
      const std::vector<Element> seed{a, b};
      CHECK(subgroup_closure(s3, seed).elements() == as_vec(oracle::closure(s3, {a, b})));
    }
}

TEST_CASE("normality") {
  const FiniteGroup s3 = fixtures::s3();
  CHECK(is_normal(s3, Subgroup::from_elements(s3, {0, 1, 2})));
  CHECK_FALSE(is_normal(s3, Subgroup::from_elements(s3, {0, kSwap})));
  CHECK(is_normal(s3, Subgroup{}));
  CHECK(kind_of([&] { is_normal(s3, std::vector<Element>{0, kCycle}); }) == ErrorKind::NotASubgroup);
  for (const auto& h : oracle::all_subgroups(s3))
    CHECK(is_normal(s3, Subgroup::from_elements(s3, as_vec(h))) == oracle::normal(s3, h));
}

TEST_CASE("complex products") {
  const FiniteGroup s3 = fixtures::s3(), z4 = cyclic_group(4);
  const ElementSet any{0, kSwap};
  CHECK(complex_product(s3, ElementSet{0}, any) == any);
  CHECK(complex_product(s3, ElementSet{0, 1, 2}, ElementSet{0, kSwap}).size() == 6);
  CHECK(complex_product(z4, ElementSet{0, 2}, ElementSet{0, 2}) == ElementSet{0, 2});
}

TEST_CASE("quotients") {
  const FiniteGroup s3 = fixtures::s3(), z4 = cyclic_group(4);
  CHECK(quotient(s3, Subgroup::whole(s3)).order() == 1);
  const QuotientGroup sign = quotient(s3, Subgroup::from_elements(s3, {0, 1, 2}));
  CHECK(sign.order() == 2);
  CHECK(sign.project(0) == 0);
  CHECK(quotient(z4, Subgroup::from_elements(z4, {0, 2})).order() == 2);
  CHECK(kind_of([&] { quotient(s3, Subgroup::from_elements(s3, {0, kSwap})); }) == ErrorKind::NotNormal);
}

TEST_CASE("isomorphism") {
  const FiniteGroup z2 = cyclic_group(2), z4 = cyclic_group(4), v4 = elementary_abelian_2(2);
  CHECK(are_isomorphic(z2, z2));
  CHECK_FALSE(are_isomorphic(z4, v4));
  CHECK_FALSE(are_isomorphic(fixtures::s3(), cyclic_group(6)));
  CHECK(are_isomorphic(fixtures::s3(), symmetric_group(3)));
  CHECK(are_isomorphic(direct_product(z2, z2), v4));
  CHECK(are_isomorphic(direct_product(z2, cyclic_group(3)), cyclic_group(6)));
  CHECK(kind_of([] { are_isomorphic(cyclic_group(65), cyclic_group(65)); }) == ErrorKind::TooLarge);

  const std::vector<FiniteGroup> eight = {cyclic_group(8), direct_product(cyclic_group(4), z2),
                                          elementary_abelian_2(3)};
  for (const auto& a : eight)
    for (const auto& b : eight) CHECK(are_isomorphic(a, b) == oracle::isomorphic(a, b));
}

TEST_CASE("subgroup and quotient invariants") {
  for (const FiniteGroup& g : {fixtures::s3(), cyclic_group(4), elementary_abelian_2(3), symmetric_group(4)}) {
    for (const auto& h : oracle::all_subgroups(g)) {
      CHECK(g.order() % h.size() == 0);
      const Subgroup sub = Subgroup::from_elements(g, as_vec(h));
      if (!is_normal(g, sub)) continue;
      for (const auto& k : oracle::all_subgroups(g))
        CHECK(oracle::product(g, h, k) == oracle::product(g, k, h));

      const QuotientGroup q = quotient(g, sub);
      CHECK(q.order() * h.size() == g.order());
      for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b)
          CHECK(q.project(g.mul(a, b)) == q.group().mul(static_cast<Element>(q.project(a)),
                                                        static_cast<Element>(q.project(b))));
      // g = representative * n with both factors unique.
      for (Element a = 0; a < g.order(); ++a) {
        int ways = 0;
        for (std::size_t c = 0; c < q.order(); ++c)
          for (Element n : h) ways += g.mul(q.representative(c), n) == a;
        CHECK(ways == 1);
      }
    }
  }
}

TEST_CASE("cosets with a custom chooser") {
  const FiniteGroup s3 = fixtures::s3();
  const Subgroup a3 = Subgroup::from_elements(s3, {0, 1, 2});
  const auto largest = [](std::span<const Element> c) { return c.back(); };
  const CosetPartition p = coset_partition(s3, a3, Side::Left, largest);
  REQUIRE(p.cosets.size() == 2);
  CHECK(p.representatives[0] == 0);  // the subgroup keeps the identity
  CHECK(p.representatives[1] == 5);
}

TEST_CASE("standard groups") {
  CHECK(symmetric_group(4).order() == 24);
  CHECK_FALSE(symmetric_group(3).is_abelian());
  CHECK(elementary_abelian_2(3).is_abelian());
  CHECK(cyclic_group(6).element_order(1) == 6);
  const FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(3));
  CHECK(g.mul(1, 2) == 3);  // (1,0)(0,1) = (1,1) with index g + 2h
}
