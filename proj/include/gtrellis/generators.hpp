#pragma once

// Granules, generator transversals and the unique factorization of branches
// into generator components.

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "gtrellis/labels.hpp"
#include "gtrellis/schreier.hpp"
#include "gtrellis/shiftbank.hpp"

namespace gtrellis {

/// Paths over [0, k] that leave and re-enter state 0, and the subgroup generated by shorter ones.
struct CodeSegment {
  int k = 0;
  PathSet full;
  PathSet boundary;  // C_{[0,k)} C_{(0,k]}, each embedded in the length-(k+1) window
};

CodeSegment code_segment(const ControllableStructure& s, int k);

struct Granule {
  CodeSegment segment;
  PathGroup paths;        // full as a group
  Subgroup boundary;      // as indices into `paths`
  CosetPartition cosets;  // of `boundary` in `paths`, ordered by least path

  std::size_t order() const { return cosets.cosets.size(); }
  std::size_t label_of(const Path& p) const;
};

Granule granule(const ControllableStructure& s, int k);

/// Picks one path out of a coset given in ascending order; returns its position.
using PathChooser = std::function<std::size_t(const std::vector<Path>& coset)>;
PathChooser lex_chooser();     // least path
PathChooser revlex_chooser();  // greatest path

class GeneratorBasis {
 public:
  GeneratorBasis() = default;
  explicit GeneratorBasis(std::vector<std::vector<Path>> generators);

  int ell() const noexcept { return static_cast<int>(gens_.size()) - 1; }
  /// Generator paths of row k; index 0 is the identity path.
  const std::vector<Path>& row(int k) const { return gens_.at(static_cast<std::size_t>(k)); }
  const Path& generator(int k, std::size_t u) const { return row(k).at(u); }
  std::size_t size(int k) const { return row(k).size(); }
  /// Component j of the row-k generator labelled u.
  Element r(int j, int k, std::size_t u) const { return generator(k, u).at(static_cast<std::size_t>(j)); }
  LabelShape shape() const;

  /// Copy with one component overwritten, for negative tests.
  GeneratorBasis with_component(int j, int k, std::size_t u, Element branch) const;

  friend bool operator==(const GeneratorBasis&, const GeneratorBasis&) = default;

 private:
  std::vector<std::vector<Path>> gens_;
};

GeneratorBasis extract_generators(const ControllableStructure& s, const PathChooser& chooser = lex_chooser());

enum class ProductOrder {
  ColumnRow,  // r(0,0) r(0,1) ... r(0,ell) r(1,1) ... r(ell,ell)
  RowColumn,  // r(0,0) r(0,1) r(1,1) r(0,2) ... r(ell,ell)
};

Element compose(const FiniteGroup& g, const GeneratorBasis& basis, const LabelArray& u,
                ProductOrder order = ProductOrder::ColumnRow);

/// Unique label array with compose(u) == b. Throws FactorizationFailed if the basis is not a transversal.
LabelArray factor(const ControllableStructure& s, const GeneratorBasis& basis, Element b);
/// Column-0 labels of x in X_0. Throws InputNotInX0.
std::vector<std::size_t> factor_column0(const ControllableStructure& s, const GeneratorBasis& basis, Element x);

/// Component membership, per-cell transversals, and the exhaustive factorization bijection.
CheckResult verify_complete_system(const ControllableStructure& s, const GeneratorBasis& basis);
/// Nonidentity generators are not products of shorter code paths and have full span.
CheckResult verify_span_property(const ControllableStructure& s, const GeneratorBasis& basis);
/// Reversed generator paths are a transversal of the granules of the reversed section.
CheckResult verify_reversed_transversal(const ControllableStructure& s, const GeneratorBasis& basis);
/// The coset map from the granule to the path quotient over [0, k] is a well-defined isomorphism.
CheckResult verify_granule_lambda_iso(const ControllableStructure& s);

/// Which source labels a label permutation at (j, k) may depend on.
enum class MemoryKey {
  LaterColumns,              // (j + d, k') for k' > k, 1 <= d <= k' - k
  LaterColumnsAndSameEpoch,  // the above plus (j, k') for k' > k
};

std::vector<std::size_t> change_key(const LabelArray& u, int j, int k, MemoryKey rule);

struct BasisChangeMap {
  LabelShape shape;
  MemoryKey rule = MemoryKey::LaterColumns;
  /// (j, k, memory key) -> label permutation; the key is read from the source labels.
  std::map<std::tuple<int, int, std::vector<std::size_t>>, Permutation> beta;
  /// Label array of the source basis -> label array of the target, by edge rank.
  std::vector<std::size_t> edge_map;

  bool is_identity() const;
};

/// Throws Inconsistent if two branches with equal memory key demand different images.
BasisChangeMap change_of_basis(const ControllableStructure& s, const GeneratorBasis& from, const GeneratorBasis& to,
                               MemoryKey rule = MemoryKey::LaterColumns);

struct BasisCount {
  BigInt count;       // distinct component systems
  BigInt aut_bound;   // automorphism count of the induced bank
  bool within_bound = true;
};

inline constexpr std::size_t kBasisCountCap = 1000000;
/// Throws TooLarge if the product of coset sizes exceeds `cap`.
BasisCount count_generator_bases(const ControllableStructure& s, std::size_t cap = kBasisCountCap);

}  // namespace gtrellis
