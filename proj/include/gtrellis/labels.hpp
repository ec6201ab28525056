#pragma once

// Triangular arrays of coset labels u(j, k), 0 <= j <= k <= ell. Column j holds
// the labels of the generators fed in j epochs ago; row k has one label
// alphabet of size row_size(k) shared by every column.

#include <cstddef>
#include <vector>

namespace gtrellis {

class LabelShape {
 public:
  LabelShape() = default;
  explicit LabelShape(std::vector<std::size_t> row_sizes);

  int ell() const noexcept { return static_cast<int>(row_sizes_.size()) - 1; }
  std::size_t row_size(int k) const { return row_sizes_.at(static_cast<std::size_t>(k)); }
  const std::vector<std::size_t>& row_sizes() const noexcept { return row_sizes_; }
  std::size_t cell_count() const noexcept { return cells_; }

  /// Column-major: (0,0), (0,1), ..., (0,ell), (1,1), ..., (ell,ell).
  std::size_t flat(int j, int k) const;

  /// Number of full arrays (graph edges) and of arrays with column 0 dropped (graph nodes).
  std::size_t edge_count() const;
  std::size_t node_count() const;

  /// Length of the memory key of row k: sum over k' > k of (k' - k).
  std::size_t key_length(int k) const;
  /// Number of distinct memory keys of row k.
  std::size_t key_count(int k) const;

  friend bool operator==(const LabelShape&, const LabelShape&) = default;

 private:
  std::vector<std::size_t> row_sizes_;
  std::size_t cells_ = 0;
};

class LabelArray {
 public:
  LabelArray() = default;
  explicit LabelArray(const LabelShape& shape) : ell_(shape.ell()), u_(shape.cell_count(), 0) {}

  int ell() const noexcept { return ell_; }
  std::size_t& at(int j, int k) { return u_[flat_index(j, k)]; }
  std::size_t at(int j, int k) const { return u_[flat_index(j, k)]; }
  const std::vector<std::size_t>& flat() const noexcept { return u_; }
  bool is_zero() const;

  /// Column 0 cleared: the encoder state / graph node part of an edge.
  LabelArray tail() const;
  /// Shift by one epoch: column c+1 takes column c without its bottom entry; column 0 cleared.
  LabelArray head() const;
  /// Replace column 0 by `column` (entries for k = 0..ell).
  LabelArray with_column0(const std::vector<std::size_t>& column) const;
  std::vector<std::size_t> column0() const;

  /// Labels at (j + d, k') for k' = k+1..ell and d = 1..k'-k, in that order.
  std::vector<std::size_t> memory_key(int j, int k) const;

  friend bool operator==(const LabelArray&, const LabelArray&) = default;
  friend auto operator<=>(const LabelArray& a, const LabelArray& b) { return a.u_ <=> b.u_; }

 private:
  std::size_t flat_index(int j, int k) const;
  int ell_ = 0;
  std::vector<std::size_t> u_;
};

/// Mixed-radix rank of a full array (flat order, first cell most significant).
std::size_t edge_rank(const LabelShape& shape, const LabelArray& u);
LabelArray edge_unrank(const LabelShape& shape, std::size_t rank);
/// Rank over the cells of columns 1..ell only.
std::size_t node_rank(const LabelShape& shape, const LabelArray& u);
LabelArray node_unrank(const LabelShape& shape, std::size_t rank);
/// Rank of a row-k memory key.
std::size_t key_rank(const LabelShape& shape, int k, const std::vector<std::size_t>& key);
std::vector<std::size_t> key_unrank(const LabelShape& shape, int k, std::size_t rank);

/// Calls f on every full array in rank order.
template <class F>
void for_each_array(const LabelShape& shape, F&& f) {
  const std::size_t n = shape.edge_count();
  for (std::size_t r = 0; r < n; ++r) f(edge_unrank(shape, r));
}

}  // namespace gtrellis
