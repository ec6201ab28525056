#pragma once

// Small sections and groups used throughout the tests and by `gtrellis verify --fixture`.

#include <string>
#include <vector>

#include "gtrellis/expansion.hpp"
#include "gtrellis/shiftbank.hpp"
#include "gtrellis/trellis.hpp"

namespace gtrellis::fixtures {

/// One state, binary labels: a memoryless section.
TrellisSection memoryless_binary();
/// States Z2, labels Z2^2 (index a0 + 2 a1), branches (s, (u, u+s), u).
TrellisSection binary_register();
/// States Z2^2 (index s1 + 2 s2), labels Z2, branches ((s1, s2), u, (u, s1)).
TrellisSection two_stage_register();
/// memoryless_binary x binary_register.
TrellisSection product_section();
/// States Z2, labels S3, branches (s, a, sign a).
TrellisSection sign_section();
/// States S3 x S3, labels S3, branches ((g1, g2), a, (a, g1)).
TrellisSection s3_register();
/// States and labels Z2, branches (s, a, s): state 1 is never reached from state 0.
TrellisSection dead_state();

/// Componentwise product section; state and label indices follow direct_product.
TrellisSection section_product(const TrellisSection& a, const TrellisSection& b);

/// S3 with 0 = e, 1 = (123), 2 = (132), 3 = (12), 4 = (13), 5 = (23) and (p q)(i) = p(q(i)).
FiniteGroup s3();
/// 1 ⊆ A3 ⊆ S3 on the indexing above.
NormalChain s3_chain();

/// One-row-pair bank with two labels per row.
UBank bank_2_2();

struct Named {
  std::string name;
  TrellisSection (*build)();
};

/// Every controllable section fixture, in a fixed order.
const std::vector<Named>& controllable_sections();
/// Lookup by name; throws Malformed for an unknown name.
TrellisSection by_name(const std::string& name);

}  // namespace gtrellis::fixtures
