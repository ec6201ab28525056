#pragma once

// The shift-register bank on coset labels, its de Bruijn-like graph, and the
// automorphisms that act row by row with bounded memory.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "gtrellis/labels.hpp"
#include "gtrellis/schreier.hpp"

namespace gtrellis {

using BigInt = boost::multiprecision::cpp_int;

struct UBank {
  LabelShape shape;  // row k has size |Q_{0,k}|, shared by every column

  int ell() const { return shape.ell(); }
  std::size_t size(int j, int k) const;
};

UBank make_bank(std::vector<std::size_t> row_sizes);
/// Throws Inconsistent if a row of quotient cells does not have a common order.
UBank ubank_from_quotients(const QuotientCells& cells);

struct BankGraph {
  LabelShape shape;
  std::size_t nodes = 0;
  std::vector<std::size_t> tail;  // per edge rank
  std::vector<std::size_t> head;
  std::size_t edges() const { return tail.size(); }
};

inline constexpr std::size_t kDefaultEdgeCap = 100000;
/// Throws TooLarge above `edge_cap` edges.
BankGraph build_graph(const UBank& bank, std::size_t edge_cap = kDefaultEdgeCap);

/// Product over rows of (n_k!)^{Υ_k}, Υ_k the number of memory keys of row k.
BigInt count_automorphisms(const UBank& bank);

using Permutation = std::vector<std::size_t>;

/// One permutation of row k's labels per memory key, shared by every column of the row.
struct RowTables {
  std::vector<std::vector<Permutation>> rows;  // rows[k][key rank]
  friend bool operator==(const RowTables&, const RowTables&) = default;
};

class BankAutomorphism {
 public:
  static BankAutomorphism from_tables(const LabelShape& shape, RowTables tables);
  static BankAutomorphism identity(const LabelShape& shape);

  const RowTables& tables() const noexcept { return tables_; }
  /// Edge map indexed by edge rank.
  const std::vector<std::size_t>& edge_map() const noexcept { return edge_map_; }
  const std::vector<std::size_t>& node_map() const noexcept { return node_map_; }
  LabelArray apply(const LabelArray& u) const;

  friend bool operator==(const BankAutomorphism& a, const BankAutomorphism& b) { return a.edge_map_ == b.edge_map_; }

 private:
  LabelShape shape_;
  RowTables tables_;
  std::vector<std::size_t> edge_map_;
  std::vector<std::size_t> node_map_;
};

inline constexpr std::size_t kDefaultAutomorphismCap = 10000;

/// All automorphisms, ordered by their free-choice vector. Throws TooMany above `cap`.
std::vector<BankAutomorphism> enumerate_automorphisms(const UBank& bank, std::size_t cap = kDefaultAutomorphismCap);

/// True iff a node bijection exists that commutes with the endpoint maps.
bool is_graph_automorphism(const BankGraph& graph, const std::vector<std::size_t>& edge_map);

/// Plain directed-multigraph automorphisms, counting parallel-edge matchings. Throws TooLarge
/// above 12 nodes or 64 edges.
BigInt brute_force_graph_automorphisms(const BankGraph& graph);

/// Reads the column-0 tables back off an edge map.
RowTables separating_permutations(const LabelShape& shape, const std::vector<std::size_t>& edge_map);

/// Edge map of `a` after `b` (apply b first).
std::vector<std::size_t> compose_edge_maps(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);
std::vector<std::size_t> invert_edge_map(const std::vector<std::size_t>& a);

/// Output column j of the edge map depends only on input columns j..ell.
bool columns_are_causal(const LabelShape& shape, const std::vector<std::size_t>& edge_map);

}  // namespace gtrellis
