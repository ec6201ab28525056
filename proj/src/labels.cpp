#include "gtrellis/labels.hpp"

#include <algorithm>
#include <limits>

#include "gtrellis/group.hpp"

namespace gtrellis {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (b != 0 && a > std::numeric_limits<std::size_t>::max() / b)
    throw Error(ErrorKind::TooLarge, "label array count overflows");
  return a * b;
}

std::size_t cells_for(int ell) { return static_cast<std::size_t>((ell + 1) * (ell + 2) / 2); }

std::size_t flat_for(int ell, int j, int k) {
  if (j < 0 || k < j || k > ell) {
    throw Error(ErrorKind::IndexOutOfRange, "label cell (" + std::to_string(j) + "," + std::to_string(k) + ")");
  }
  // Columns before j contribute (ell+1) + ell + ... + (ell+2-j) cells.
  const int before = j * (ell + 1) - j * (j - 1) / 2;
  return static_cast<std::size_t>(before + (k - j));
}

}  // namespace

LabelShape::LabelShape(std::vector<std::size_t> row_sizes) : row_sizes_(std::move(row_sizes)) {
  if (row_sizes_.empty()) throw Error(ErrorKind::Malformed, "label shape needs at least one row");
  for (std::size_t n : row_sizes_)
    if (n == 0) throw Error(ErrorKind::Malformed, "label row of size 0");
  cells_ = cells_for(ell());
}

std::size_t LabelShape::flat(int j, int k) const { return flat_for(ell(), j, k); }

std::size_t LabelShape::edge_count() const {
  std::size_t n = 1;
  for (int k = 0; k <= ell(); ++k)
    for (int j = 0; j <= k; ++j) n = checked_mul(n, row_size(k));
  return n;
}

std::size_t LabelShape::node_count() const {
  std::size_t n = 1;
  for (int k = 1; k <= ell(); ++k)
    for (int j = 1; j <= k; ++j) n = checked_mul(n, row_size(k));
  return n;
}

std::size_t LabelShape::key_length(int k) const {
  std::size_t len = 0;
  for (int kk = k + 1; kk <= ell(); ++kk) len += static_cast<std::size_t>(kk - k);
  return len;
}

std::size_t LabelShape::key_count(int k) const {
  std::size_t n = 1;
  for (int kk = k + 1; kk <= ell(); ++kk)
    for (int d = 1; d <= kk - k; ++d) n = checked_mul(n, row_size(kk));
  return n;
}

// ---------------------------------------------------------------------------

std::size_t LabelArray::flat_index(int j, int k) const { return flat_for(ell_, j, k); }

bool LabelArray::is_zero() const {
  return std::all_of(u_.begin(), u_.end(), [](std::size_t x) { return x == 0; });
}

LabelArray LabelArray::tail() const {
  LabelArray out = *this;
  for (int k = 0; k <= ell_; ++k) out.at(0, k) = 0;
  return out;
}

LabelArray LabelArray::head() const {
  LabelArray out = *this;
  for (int k = 0; k <= ell_; ++k) out.at(0, k) = 0;
  for (int c = 1; c <= ell_; ++c)
    for (int k = c; k <= ell_; ++k) out.at(c, k) = at(c - 1, k);
  return out;
}

LabelArray LabelArray::with_column0(const std::vector<std::size_t>& column) const {
  if (column.size() != static_cast<std::size_t>(ell_ + 1))
    throw Error(ErrorKind::Malformed, "column of " + std::to_string(column.size()) + " labels, expected " +
                                          std::to_string(ell_ + 1));
  LabelArray out = *this;
  for (int k = 0; k <= ell_; ++k) out.at(0, k) = column[static_cast<std::size_t>(k)];
  return out;
}

std::vector<std::size_t> LabelArray::column0() const {
  std::vector<std::size_t> out;
  for (int k = 0; k <= ell_; ++k) out.push_back(at(0, k));
  return out;
}

std::vector<std::size_t> LabelArray::memory_key(int j, int k) const {
  std::vector<std::size_t> key;
  for (int kk = k + 1; kk <= ell_; ++kk)
    for (int d = 1; d <= kk - k; ++d) key.push_back(at(j + d, kk));
  return key;
}

// ---------------------------------------------------------------------------

namespace {

template <class Cells>
std::size_t rank_cells(const LabelShape& shape, const LabelArray& u, Cells cells) {
  std::size_t r = 0;
  for (auto [j, k] : cells) {
    const std::size_t n = shape.row_size(k);
    const std::size_t x = u.at(j, k);
    if (x >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "label " + std::to_string(x) + " at (" + std::to_string(j) + "," +
                                                  std::to_string(k) + ") exceeds row size " + std::to_string(n));
    }
    r = r * n + x;
  }
  return r;
}

template <class Cells>
LabelArray unrank_cells(const LabelShape& shape, std::size_t rank, Cells cells) {
  LabelArray u(shape);
  for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
    const std::size_t n = shape.row_size(it->second);
    u.at(it->first, it->second) = rank % n;
    rank /= n;
  }
  return u;
}

std::vector<std::pair<int, int>> cells_from_column(int ell, int first) {
  std::vector<std::pair<int, int>> out;
  for (int j = first; j <= ell; ++j)
    for (int k = j; k <= ell; ++k) out.emplace_back(j, k);
  return out;
}

}  // namespace

std::size_t edge_rank(const LabelShape& shape, const LabelArray& u) {
  return rank_cells(shape, u, cells_from_column(shape.ell(), 0));
}

LabelArray edge_unrank(const LabelShape& shape, std::size_t rank) {
  return unrank_cells(shape, rank, cells_from_column(shape.ell(), 0));
}

std::size_t node_rank(const LabelShape& shape, const LabelArray& u) {
  return rank_cells(shape, u, cells_from_column(shape.ell(), 1));
}

LabelArray node_unrank(const LabelShape& shape, std::size_t rank) {
  return unrank_cells(shape, rank, cells_from_column(shape.ell(), 1));
}

std::size_t key_rank(const LabelShape& shape, int k, const std::vector<std::size_t>& key) {
  std::size_t r = 0, i = 0;
  for (int kk = k + 1; kk <= shape.ell(); ++kk)
    for (int d = 1; d <= kk - k; ++d) r = r * shape.row_size(kk) + key.at(i++);
  return r;
}

std::vector<std::size_t> key_unrank(const LabelShape& shape, int k, std::size_t rank) {
  std::vector<std::size_t> key(shape.key_length(k));
  std::size_t i = key.size();
  for (int kk = shape.ell(); kk > k; --kk)
    for (int d = kk - k; d >= 1; --d) {
      key[--i] = rank % shape.row_size(kk);
      rank /= shape.row_size(kk);
    }
  return key;
}

}  // namespace gtrellis
