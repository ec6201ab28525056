#include "gtrellis/fixtures.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace gtrellis::fixtures {

TrellisSection memoryless_binary() {
  return build_section(trivial_group(), cyclic_group(2), {{0, 0, 0}, {0, 1, 0}}, "memoryless-binary");
}

TrellisSection binary_register() {
  std::vector<Branch> br;
  for (Element s = 0; s < 2; ++s)
    for (Element u = 0; u < 2; ++u) br.push_back({s, u + 2 * (u ^ s), u});
  return build_section(cyclic_group(2), elementary_abelian_2(2), std::move(br), "binary-register");
}

TrellisSection two_stage_register() {
  std::vector<Branch> br;
  for (Element s1 = 0; s1 < 2; ++s1)
    for (Element s2 = 0; s2 < 2; ++s2)
      for (Element u = 0; u < 2; ++u) br.push_back({s1 + 2 * s2, u, u + 2 * s1});
  return build_section(elementary_abelian_2(2), cyclic_group(2), std::move(br), "two-stage-register");
}

TrellisSection section_product(const TrellisSection& a, const TrellisSection& b) {
  const auto ns = static_cast<Element>(a.sigma().order());
  const auto na = static_cast<Element>(a.alphabet().order());
  std::vector<Branch> br;
  for (const Branch& x : a.branches())
    for (const Branch& y : b.branches()) br.push_back({x.s + ns * y.s, x.a + na * y.a, x.s2 + ns * y.s2});
  std::string name = a.name() + "*" + b.name();
  return build_section(direct_product(a.sigma(), b.sigma()), direct_product(a.alphabet(), b.alphabet()), std::move(br),
                       std::move(name));
}

TrellisSection product_section() {
  TrellisSection t = section_product(memoryless_binary(), binary_register());
  return build_section(t.sigma(), t.alphabet(), t.branches(), "product");
}

namespace {

using Perm3 = std::array<int, 3>;
constexpr std::array<Perm3, 6> kS3 = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}}};

Element sign_of(Element a) { return a >= 3 ? 1 : 0; }

}  // namespace

FiniteGroup s3() {
  std::vector<std::vector<std::int64_t>> table(6, std::vector<std::int64_t>(6));
  for (std::size_t p = 0; p < 6; ++p) {
    for (std::size_t q = 0; q < 6; ++q) {
      Perm3 r{};
      for (int i = 0; i < 3; ++i) r[i] = kS3[p][kS3[q][i]];
      table[p][q] = std::find(kS3.begin(), kS3.end(), r) - kS3.begin();
    }
  }
  return FiniteGroup::from_table(table);
}

NormalChain s3_chain() { return NormalChain::make(s3(), {{0, 1, 2}, {0, 1, 2, 3, 4, 5}}); }

TrellisSection sign_section() {
  std::vector<Branch> br;
  for (Element s = 0; s < 2; ++s)
    for (Element a = 0; a < 6; ++a) br.push_back({s, a, sign_of(a)});
  return build_section(cyclic_group(2), s3(), std::move(br), "sign");
}

TrellisSection s3_register() {
  const FiniteGroup g = s3();
  std::vector<Branch> br;
  for (Element g1 = 0; g1 < 6; ++g1)
    for (Element g2 = 0; g2 < 6; ++g2)
      for (Element a = 0; a < 6; ++a) br.push_back({g1 + 6 * g2, a, a + 6 * g1});
  return build_section(direct_product(g, g), g, std::move(br), "s3-register");
}

TrellisSection dead_state() {
  std::vector<Branch> br;
  for (Element s = 0; s < 2; ++s)
    for (Element a = 0; a < 2; ++a) br.push_back({s, a, s});
  return build_section(cyclic_group(2), cyclic_group(2), std::move(br), "dead-state");
}

UBank bank_2_2() { return make_bank({2, 2}); }

const std::vector<Named>& controllable_sections() {
  static const std::vector<Named> all = {
      {"memoryless-binary", &memoryless_binary}, {"binary-register", &binary_register},
      {"two-stage-register", &two_stage_register}, {"product", &product_section},
      {"sign", &sign_section},
  };
  return all;
}

TrellisSection by_name(const std::string& name) {
  for (const auto& f : controllable_sections())
    if (f.name == name) return f.build();
  if (name == "s3-register") return s3_register();
  if (name == "dead-state") return dead_state();
  throw Error(ErrorKind::Malformed, "unknown fixture '" + name + "'");
}

}  // namespace gtrellis::fixtures
