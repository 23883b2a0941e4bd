#include "bispec/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "bispec/errors.hpp"

namespace bispec {

namespace {

std::uint64_t low_mask(int n)
{
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_part_sizes(int p, int q, char const *who)
{
  if (p < 1 || q < 1)
    throw DomainError(std::string(who) + ": part orders must be >= 1, got " +
                      std::to_string(p) + "x" + std::to_string(q));
}

} // namespace

BipartiteGraph::BipartiteGraph(int p, int q, std::vector<std::uint64_t> rows)
: p_(p), q_(q), e_(0), rows_(std::move(rows))
{
  check_part_sizes(p, q, "BipartiteGraph");
  if (p > max_part || q > max_part)
    throw ScaleError("BipartiteGraph: part orders are capped at " +
                     std::to_string(max_part));
  if (static_cast<int>(rows_.size()) != p)
    throw InputShapeError("BipartiteGraph: expected " + std::to_string(p) +
                          " rows, got " + std::to_string(rows_.size()));
  auto const mask = low_mask(q);
  for (auto r : rows_) {
    if (r & ~mask)
      throw InputValueError("BipartiteGraph: row has bits beyond column " +
                            std::to_string(q - 1));
    e_ += std::popcount(r);
  }
}

std::uint64_t BipartiteGraph::column(int j) const noexcept
{
  std::uint64_t col = 0;
  for (int i = 0; i < p_; ++i)
    col |= ((rows_[i] >> j) & 1u) << i;
  return col;
}

int BipartiteGraph::left_degree(int i) const noexcept
{ return std::popcount(rows_[i]); }

int BipartiteGraph::right_degree(int j) const noexcept
{ return std::popcount(column(j)); }

std::vector<int> BipartiteGraph::left_degrees() const
{
  std::vector<int> d(p_);
  for (int i = 0; i < p_; ++i)
    d[i] = left_degree(i);
  return d;
}

std::vector<int> BipartiteGraph::right_degrees() const
{
  std::vector<int> d(q_, 0);
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < q_; ++j)
      d[j] += has_edge(i, j);
  return d;
}

BipartiteGraph BipartiteGraph::transposed() const
{
  std::vector<std::uint64_t> cols(q_);
  for (int j = 0; j < q_; ++j)
    cols[j] = column(j);
  return BipartiteGraph(q_, p_, std::move(cols));
}

BipartiteGraph BipartiteGraph::permuted(std::vector<int> const &row_perm,
                                        std::vector<int> const &col_perm) const
{
  std::vector<std::uint64_t> out(p_, 0);
  for (int i = 0; i < p_; ++i) {
    auto const src = rows_[row_perm[i]];
    for (int j = 0; j < q_; ++j)
      out[i] |= ((src >> col_perm[j]) & 1u) << j;
  }
  return BipartiteGraph(p_, q_, std::move(out));
}

DegreeProfile DegreeProfile::from_sequences(std::vector<int> d,
                                            std::vector<int> dprime)
{
  if (d.empty() || dprime.empty())
    throw DomainError("DegreeProfile: both sequences must be non-empty");
  auto const p = static_cast<int>(d.size());
  auto const q = static_cast<int>(dprime.size());
  if (!std::is_sorted(d.begin(), d.end(), std::greater<>()) ||
      !std::is_sorted(dprime.begin(), dprime.end(), std::greater<>()))
    throw DomainError("DegreeProfile: sequences must be non-increasing");
  if (d.back() < 0 || dprime.back() < 0 || d.front() > q || dprime.front() > p)
    throw DomainError("DegreeProfile: degree out of range");
  auto const sum_d = std::accumulate(d.begin(), d.end(), 0);
  auto const sum_dp = std::accumulate(dprime.begin(), dprime.end(), 0);
  if (sum_d != sum_dp)
    throw DomainError("DegreeProfile: degree sums differ (" +
                      std::to_string(sum_d) + " vs " + std::to_string(sum_dp) +
                      ")");
  return DegreeProfile{std::move(d), std::move(dprime), sum_d};
}

BipartiteGraph from_biadjacency(std::vector<std::vector<int>> const &rows)
{
  if (rows.empty() || rows.front().empty())
    throw InputShapeError("from_biadjacency: empty matrix");
  auto const q = rows.front().size();
  if (q > static_cast<std::size_t>(BipartiteGraph::max_part) ||
      rows.size() > static_cast<std::size_t>(BipartiteGraph::max_part))
    throw ScaleError("from_biadjacency: part orders are capped at 64");

  std::vector<std::uint64_t> packed;
  packed.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != q)
      throw InputShapeError("from_biadjacency: row " + std::to_string(i) +
                            " has length " + std::to_string(rows[i].size()) +
                            ", expected " + std::to_string(q));
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < q; ++j) {
      auto const v = rows[i][j];
      if (v != 0 && v != 1)
        throw InputValueError("from_biadjacency: entry (" + std::to_string(i) +
                              "," + std::to_string(j) + ") is " +
                              std::to_string(v));
      bits |= static_cast<std::uint64_t>(v) << j;
    }
    packed.push_back(bits);
  }
  return BipartiteGraph(static_cast<int>(rows.size()), static_cast<int>(q),
                        std::move(packed));
}

BipartiteGraph complete_bipartite(int p, int q)
{
  check_part_sizes(p, q, "complete_bipartite");
  if (q > BipartiteGraph::max_part)
    throw ScaleError("complete_bipartite: part orders are capped at 64");
  return BipartiteGraph(p, q, std::vector<std::uint64_t>(p, low_mask(q)));
}

BipartiteGraph empty_bipartite(int s, int t)
{
  check_part_sizes(s, t, "empty_bipartite");
  return BipartiteGraph(s, t, std::vector<std::uint64_t>(s, 0));
}

BipartiteGraph bipartite_sum(BipartiteGraph const &h, BipartiteGraph const &hp)
{
  auto const p = h.p() + hp.p();
  auto const q = h.q() + hp.q();
  if (p > BipartiteGraph::max_part || q > BipartiteGraph::max_part)
    throw ScaleError("bipartite_sum: result exceeds the 64-vertex part cap");

  std::vector<std::uint64_t> rows;
  rows.reserve(p);
  auto const hp_cols = low_mask(hp.q()) << h.q();
  for (int i = 0; i < h.p(); ++i)
    rows.push_back(h.row(i) | hp_cols);
  auto const h_cols = low_mask(h.q());
  for (int i = 0; i < hp.p(); ++i)
    rows.push_back((hp.row(i) << h.q()) | h_cols);
  return BipartiteGraph(p, q, std::move(rows));
}

BipartiteGraph k_bracket(int p, int q, int e)
{
  check_part_sizes(p, q, "k_bracket");
  auto const missing = p * q - e;
  if (missing < 1 || missing > std::max(p, q))
    throw DomainError("k_bracket: need 1 <= pq-e <= max(p,q), got pq-e = " +
                      std::to_string(missing));
  if (p > q)
    return k_bracket(q, p, e).transposed();

  // K_{p-1,q-k} + N_{1,k}: the last left vertex keeps q-k neighbors.
  std::vector<std::uint64_t> rows(p, low_mask(q));
  rows.back() = low_mask(q - missing);
  return BipartiteGraph(p, q, std::move(rows));
}

BipartiteGraph k_brace(int p, int q, int e)
{
  check_part_sizes(p, q, "k_brace");
  auto const missing = p * q - e;
  if (missing < 1 || missing > std::min(p, q))
    throw DomainError("k_brace: need 1 <= pq-e <= min(p,q), got pq-e = " +
                      std::to_string(missing));
  if (p > q)
    return k_brace(q, p, e).transposed();

  // K_{p-k,q-1} + N_{k,1}: the last right vertex keeps p-k neighbors.
  std::vector<std::uint64_t> rows(p, low_mask(q));
  for (int i = p - missing; i < p; ++i)
    rows[i] = low_mask(q - 1);
  return BipartiteGraph(p, q, std::move(rows));
}

DegreeProfile degree_profile(BipartiteGraph const &g)
{
  auto d = g.left_degrees();
  auto dp = g.right_degrees();
  std::sort(d.begin(), d.end(), std::greater<>());
  std::sort(dp.begin(), dp.end(), std::greater<>());
  return DegreeProfile{std::move(d), std::move(dp), g.edges()};
}

CommonNeighbors common_neighbors(BipartiteGraph const &g)
{
  auto const p = static_cast<std::size_t>(g.p());
  auto const q = static_cast<std::size_t>(g.q());
  CommonNeighbors cn{IntMatrix(p, p), IntMatrix(q, q)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      cn.left(i, k) = std::popcount(g.row(i) & g.row(k));

  std::vector<std::uint64_t> cols(q);
  for (std::size_t j = 0; j < q; ++j)
    cols[j] = g.column(static_cast<int>(j));
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t l = 0; l < q; ++l)
      cn.right(j, l) = std::popcount(cols[j] & cols[l]);
  return cn;
}

bool is_biregular(BipartiteGraph const &g)
{
  auto const d = g.left_degrees();
  auto const dp = g.right_degrees();
  auto all_equal = [](std::vector<int> const &v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) ==
           v.end();
  };
  return all_equal(d) && all_equal(dp);
}

bool is_complete(BipartiteGraph const &g)
{ return g.edges() == g.p() * g.q(); }

std::vector<std::vector<int>> connected_components(BipartiteGraph const &g)
{
  auto const p = g.p();
  auto const q = g.q();
  std::vector<int> label(p + q, -1);
  std::vector<std::vector<int>> components;

  for (int start = 0; start < p + q; ++start) {
    if (label[start] >= 0)
      continue;
    auto const id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<int> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      auto const v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      if (v < p) {
        for (auto bits = g.row(v); bits; bits &= bits - 1) {
          auto const w = p + std::countr_zero(bits);
          if (label[w] < 0) {
            label[w] = id;
            stack.push_back(w);
          }
        }
      } else {
        for (auto bits = g.column(v - p); bits; bits &= bits - 1) {
          auto const w = std::countr_zero(bits);
          if (label[w] < 0) {
            label[w] = id;
            stack.push_back(w);
          }
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

bool is_connected(BipartiteGraph const &g)
{ return connected_components(g).size() == 1; }

std::optional<Decomposition> decompose_ks_plus_biregular(BipartiteGraph const &g)
{
  if (!is_connected(g))
    throw PreconditionError("decompose_ks_plus_biregular: graph is disconnected");

  Decomposition dec{0, 0, g, true, {}, {}, {}, {}};
  if (is_complete(g)) {
    dec.left_rest.resize(g.p());
    std::iota(dec.left_rest.begin(), dec.left_rest.end(), 0);
    dec.right_rest.resize(g.q());
    std::iota(dec.right_rest.begin(), dec.right_rest.end(), 0);
    return dec;
  }

  for (int i = 0; i < g.p(); ++i)
    (g.left_degree(i) == g.q() ? dec.left_full : dec.left_rest).push_back(i);
  for (int j = 0; j < g.q(); ++j)
    (g.right_degree(j) == g.p() ? dec.right_full : dec.right_rest).push_back(j);

  // A full-degree vertex on either side of a non-complete graph leaves at
  // least one non-full vertex on both sides.
  std::vector<std::uint64_t> rows;
  rows.reserve(dec.left_rest.size());
  for (auto i : dec.left_rest) {
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < dec.right_rest.size(); ++k)
      bits |= static_cast<std::uint64_t>(g.has_edge(i, dec.right_rest[k])) << k;
    rows.push_back(bits);
  }
  dec.s_prime = static_cast<int>(dec.left_full.size());
  dec.t_prime = static_cast<int>(dec.right_full.size());
  dec.h = BipartiteGraph(static_cast<int>(dec.left_rest.size()),
                         static_cast<int>(dec.right_rest.size()),
                         std::move(rows));
  dec.h_biregular = is_biregular(dec.h);
  if (!dec.h_biregular)
    return std::nullopt;
  return dec;
}

BipartiteGraph reconstruct(Decomposition const &dec)
{
  auto const s = dec.s_prime;
  auto const t = dec.t_prime;
  auto const p = s + dec.h.p();
  auto const q = t + dec.h.q();
  std::vector<std::uint64_t> rows(p, low_mask(q));
  for (int i = 0; i < dec.h.p(); ++i)
    rows[s + i] = low_mask(t) | (dec.h.row(i) << t);
  return BipartiteGraph(p, q, std::move(rows));
}

namespace {

// Maximizes the descending-sorted column-word sequence over all row orders
// with non-increasing row degree. Rows are the smaller part (n <= 8).
BipartiteGraph canonical_rows_small(BipartiteGraph const &m)
{
  auto const n = m.p();
  auto const cols = m.q();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return m.left_degree(a) > m.left_degree(b);
  });

  // Runs of equal degree are permuted independently.
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && m.left_degree(order[j]) == m.left_degree(order[i]))
      ++j;
    groups.emplace_back(i, j);
    std::sort(order.begin() + i, order.begin() + j);
    i = j;
  }

  std::vector<std::uint32_t> words(cols), best;
  auto evaluate = [&] {
    for (int j = 0; j < cols; ++j) {
      std::uint32_t w = 0;
      for (int i = 0; i < n; ++i)
        w |= static_cast<std::uint32_t>(m.has_edge(order[i], j)) << (n - 1 - i);
      words[j] = w;
    }
    std::sort(words.begin(), words.end(), std::greater<>());
    if (best.empty() || words > best)
      best = words;
  };

  for (;;) {
    evaluate();
    // Odometer over the per-group permutations.
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      auto [lo, hi] = groups[g];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi))
        break;
    }
    if (g == groups.size())
      break;
  }

  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < cols; ++j)
      rows[i] |= static_cast<std::uint64_t>((best[j] >> (n - 1 - i)) & 1u) << j;
  return BipartiteGraph(n, cols, std::move(rows));
}

} // namespace

BipartiteGraph canonical_graph(BipartiteGraph const &g)
{
  if (std::min(g.p(), g.q()) > 8)
    throw ScaleError("canonical_form: exact canonicalization needs min(p,q) <= 8");
  if (g.p() <= g.q())
    return canonical_rows_small(g);
  return canonical_rows_small(g.transposed()).transposed();
}

std::string matrix_string(BipartiteGraph const &g)
{
  std::string out = std::to_string(g.p()) + "x" + std::to_string(g.q()) + ":";
  for (int i = 0; i < g.p(); ++i) {
    if (i)
      out += ',';
    for (int j = 0; j < g.q(); ++j)
      out += g.has_edge(i, j) ? '1' : '0';
  }
  return out;
}

std::string canonical_form(BipartiteGraph const &g)
{ return matrix_string(canonical_graph(g)); }

BipartiteGraph graph_from_matrix_string(std::string const &s)
{
  auto const colon = s.find(':');
  auto const x = s.find('x');
  if (colon == std::string::npos || x == std::string::npos || x > colon)
    throw InputShapeError("matrix string: expected 'pxq:rows', got '" + s + "'");
  int p = 0, q = 0;
  try {
    p = std::stoi(s.substr(0, x));
    q = std::stoi(s.substr(x + 1, colon - x - 1));
  } catch (std::exception const &) {
    throw InputShapeError("matrix string: bad dimensions in '" + s + "'");
  }
  std::vector<std::vector<int>> rows;
  std::stringstream body(s.substr(colon + 1));
  std::string token;
  while (std::getline(body, token, ',')) {
    std::vector<int> row;
    for (char c : token) {
      if (c != '0' && c != '1')
        throw InputValueError("matrix string: non-binary entry '" +
                              std::string(1, c) + "'");
      row.push_back(c - '0');
    }
    rows.push_back(std::move(row));
  }
  auto g = from_biadjacency(rows);
  if (g.p() != p || g.q() != q)
    throw InputShapeError("matrix string: header " + std::to_string(p) + "x" +
                          std::to_string(q) + " does not match body");
  return g;
}

} // namespace bispec
