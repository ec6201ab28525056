#include "gtrellis/shiftbank.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gtrellis {

std::size_t UBank::size(int j, int k) const {
  if (j < 0 || j > k) throw Error(ErrorKind::IndexOutOfRange, "bank cell (" + std::to_string(j) + "," + std::to_string(k) + ")");
  return shape.row_size(k);
}

UBank make_bank(std::vector<std::size_t> row_sizes) { return UBank{LabelShape(std::move(row_sizes))}; }

UBank ubank_from_quotients(const QuotientCells& cells) {
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= cells.ell(); ++k) {
    const std::size_t n = cells.order(0, k);
    for (int j = 1; j <= k; ++j) {
      if (cells.order(j, k) != n) {
        throw Error(ErrorKind::Inconsistent, "row " + std::to_string(k) + " has quotient orders " + std::to_string(n) +
                                                 " and " + std::to_string(cells.order(j, k)));
      }
    }
    sizes.push_back(n);
  }
  return make_bank(std::move(sizes));
}

BankGraph build_graph(const UBank& bank, std::size_t edge_cap) {
  const std::size_t edges = bank.shape.edge_count();
  if (edges > edge_cap) {
    throw Error(ErrorKind::TooLarge, std::to_string(edges) + " edges exceed the cap of " + std::to_string(edge_cap));
  }
  BankGraph g;
  g.shape = bank.shape;
  g.nodes = bank.shape.node_count();
  g.tail.resize(edges);
  g.head.resize(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const LabelArray u = edge_unrank(bank.shape, e);
    g.tail[e] = node_rank(bank.shape, u);
    g.head[e] = node_rank(bank.shape, u.head());
  }
  return g;
}

BigInt count_automorphisms(const UBank& bank) {
  const auto& shape = bank.shape;
  BigInt total = 1;
  for (int k = 0; k <= shape.ell(); ++k) {
    BigInt fact = 1;
    for (std::size_t i = 2; i <= shape.row_size(k); ++i) fact *= i;
    // Υ_k = prod_{k' > k} n_{k'}^{k'-k}, kept exact.
    BigInt upsilon = 1;
    for (int kk = k + 1; kk <= shape.ell(); ++kk)
      for (int d = 0; d < kk - k; ++d) upsilon *= shape.row_size(kk);
    if (fact == 1) continue;
    if (upsilon > BigInt(std::numeric_limits<unsigned>::max()))
      throw Error(ErrorKind::TooLarge, "automorphism count exponent does not fit in 32 bits");
    total *= boost::multiprecision::pow(fact, upsilon.convert_to<unsigned>());
  }
  return total;
}

// ---------------------------------------------------------------------------

LabelArray BankAutomorphism::apply(const LabelArray& u) const {
  LabelArray out(shape_);
  for (int k = 0; k <= shape_.ell(); ++k) {
    for (int j = 0; j <= k; ++j) {
      const std::size_t key = key_rank(shape_, k, u.memory_key(j, k));
      out.at(j, k) = tables_.rows[k][key][u.at(j, k)];
    }
  }
  return out;
}

BankAutomorphism BankAutomorphism::from_tables(const LabelShape& shape, RowTables tables) {
  if (tables.rows.size() != static_cast<std::size_t>(shape.ell() + 1))
    throw Error(ErrorKind::Malformed, "table rows do not match the bank");
  for (int k = 0; k <= shape.ell(); ++k) {
    const auto& row = tables.rows[k];
    if (row.size() != shape.key_count(k)) throw Error(ErrorKind::Malformed, "row " + std::to_string(k) + " key count mismatch");
    for (const Permutation& p : row) {
      Permutation sorted = p;
      std::sort(sorted.begin(), sorted.end());
      Permutation iota(shape.row_size(k));
      std::iota(iota.begin(), iota.end(), std::size_t{0});
      if (sorted != iota) throw Error(ErrorKind::Malformed, "row " + std::to_string(k) + " table is not a permutation");
    }
  }
  BankAutomorphism a;
  a.shape_ = shape;
  a.tables_ = std::move(tables);
  const std::size_t edges = shape.edge_count();
  a.edge_map_.resize(edges);
  a.node_map_.resize(shape.node_count());
  for (std::size_t e = 0; e < edges; ++e) {
    const LabelArray u = edge_unrank(shape, e);
    const LabelArray v = a.apply(u);
    a.edge_map_[e] = edge_rank(shape, v);
    a.node_map_[node_rank(shape, u)] = node_rank(shape, v);
  }
  return a;
}

BankAutomorphism BankAutomorphism::identity(const LabelShape& shape) {
  RowTables t;
  for (int k = 0; k <= shape.ell(); ++k) {
    Permutation id(shape.row_size(k));
    std::iota(id.begin(), id.end(), std::size_t{0});
    t.rows.emplace_back(shape.key_count(k), id);
  }
  return from_tables(shape, std::move(t));
}

std::vector<BankAutomorphism> enumerate_automorphisms(const UBank& bank, std::size_t cap) {
  const BigInt count = count_automorphisms(bank);
  if (count > cap) {
    throw Error(ErrorKind::TooMany, "bank has " + count.str() + " automorphisms, cap is " + std::to_string(cap));
  }
  const auto& shape = bank.shape;
  std::vector<std::vector<Permutation>> perms_of_row;
  // Free choices: one permutation per (row, key), in row then key order.
  std::vector<std::pair<int, std::size_t>> slots;
  for (int k = 0; k <= shape.ell(); ++k) {
    Permutation p(shape.row_size(k));
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<Permutation> all;
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    perms_of_row.push_back(std::move(all));
    for (std::size_t key = 0; key < shape.key_count(k); ++key) slots.emplace_back(k, key);
  }
  std::vector<BankAutomorphism> out;
  out.reserve(count.convert_to<std::size_t>());
  RowTables tables;
  for (int k = 0; k <= shape.ell(); ++k) tables.rows.emplace_back(shape.key_count(k));
  std::function<void(std::size_t)> choose = [&](std::size_t slot) {
    if (slot == slots.size()) {
      out.push_back(BankAutomorphism::from_tables(shape, tables));
      return;
    }
    auto [k, key] = slots[slot];
    for (const Permutation& p : perms_of_row[k]) {
      tables.rows[k][key] = p;
      choose(slot + 1);
    }
  };
  choose(0);
  return out;
}

// ---------------------------------------------------------------------------

bool is_graph_automorphism(const BankGraph& graph, const std::vector<std::size_t>& edge_map) {
  const std::size_t m = graph.edges();
  if (edge_map.size() != m) return false;
  std::vector<char> seen(m, 0);
  for (std::size_t e : edge_map) {
    if (e >= m || seen[e]) return false;
    seen[e] = 1;
  }
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> node_map(graph.nodes, unset);
  auto bind = [&](std::size_t from, std::size_t to) {
    if (node_map[from] == unset) node_map[from] = to;
    return node_map[from] == to;
  };
  for (std::size_t e = 0; e < m; ++e) {
    if (!bind(graph.tail[e], graph.tail[edge_map[e]]) || !bind(graph.head[e], graph.head[edge_map[e]])) return false;
  }
  std::vector<char> hit(graph.nodes, 0);
  for (std::size_t v = 0; v < graph.nodes; ++v) {
    if (node_map[v] == unset || hit[node_map[v]]) return false;
    hit[node_map[v]] = 1;
  }
  return true;
}

BigInt brute_force_graph_automorphisms(const BankGraph& graph) {
  const std::size_t n = graph.nodes;
  if (n > 12 || graph.edges() > 64) {
    throw Error(ErrorKind::TooLarge, "brute-force automorphism count limited to 12 nodes and 64 edges");
  }
  std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n, 0));
  for (std::size_t e = 0; e < graph.edges(); ++e) ++mult[graph.tail[e]][graph.head[e]];
  BigInt parallel = 1;  // matchings of parallel edges, the same for every node permutation
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 2; i <= mult[a][b]; ++i) parallel *= i;

  std::vector<std::size_t> image(n);
  std::vector<char> used(n, 0);
  std::size_t node_perms = 0;
  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == n) {
      ++node_perms;
      return;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w]) continue;
      image[v] = w;
      bool ok = mult[v][v] == mult[w][w];
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = mult[u][v] == mult[image[u]][w] && mult[v][u] == mult[w][image[u]];
      if (!ok) continue;
      used[w] = 1;
      assign(v + 1);
      used[w] = 0;
    }
  };
  assign(0);
  return parallel * node_perms;
}

RowTables separating_permutations(const LabelShape& shape, const std::vector<std::size_t>& edge_map) {
  RowTables t;
  for (int k = 0; k <= shape.ell(); ++k) {
    std::vector<Permutation> row;
    for (std::size_t key = 0; key < shape.key_count(k); ++key) {
      const auto key_labels = key_unrank(shape, k, key);
      LabelArray base(shape);
      std::size_t i = 0;
      for (int kk = k + 1; kk <= shape.ell(); ++kk)
        for (int d = 1; d <= kk - k; ++d) base.at(d, kk) = key_labels[i++];
      Permutation p(shape.row_size(k));
      for (std::size_t x = 0; x < p.size(); ++x) {
        LabelArray u = base;
        u.at(0, k) = x;
        p[x] = edge_unrank(shape, edge_map[edge_rank(shape, u)]).at(0, k);
      }
      row.push_back(std::move(p));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::size_t> compose_edge_maps(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(b.size());
  for (std::size_t e = 0; e < b.size(); ++e) out[e] = a[b[e]];
  return out;
}

std::vector<std::size_t> invert_edge_map(const std::vector<std::size_t>& a) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t e = 0; e < a.size(); ++e) out[a[e]] = e;
  return out;
}

bool columns_are_causal(const LabelShape& shape, const std::vector<std::size_t>& edge_map) {
  for (std::size_t e = 0; e < edge_map.size(); ++e) {
    const LabelArray u = edge_unrank(shape, e);
    const LabelArray out = edge_unrank(shape, edge_map[e]);
    for (int j = 1; j <= shape.ell(); ++j) {
      LabelArray cut = u;
      for (int c = 0; c < j; ++c)
        for (int k = c; k <= shape.ell(); ++k) cut.at(c, k) = 0;
      const LabelArray cut_out = edge_unrank(shape, edge_map[edge_rank(shape, cut)]);
      for (int c = j; c <= shape.ell(); ++c)
        for (int k = c; k <= shape.ell(); ++k)
          if (cut_out.at(c, k) != out.at(c, k)) return false;
    }
  }
  return true;
}

}  // namespace gtrellis
