#ifndef BISPEC_GRAPH_HPP
#define BISPEC_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bispec/matrix.hpp"

namespace bispec {

/// Bipartite graph with an ordered bipartition U = {u_0..u_{p-1}},
/// V = {v_0..v_{q-1}}, stored as packed biadjacency rows (bit j of row i is
/// set iff u_i ~ v_j). Values are immutable once built.
class BipartiteGraph {
public:
  static constexpr int max_part = 64;

  /// Throws DomainError for p or q < 1, ScaleError above max_part, and
  /// InputValueError if a row has bits at or beyond column q.
  BipartiteGraph(int p, int q, std::vector<std::uint64_t> rows);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int edges() const noexcept { return e_; }

  bool has_edge(int i, int j) const noexcept { return (rows_[i] >> j) & 1u; }
  std::uint64_t row(int i) const noexcept { return rows_[i]; }
  std::vector<std::uint64_t> const &rows() const noexcept { return rows_; }
  std::uint64_t column(int j) const noexcept;

  int left_degree(int i) const noexcept;
  int right_degree(int j) const noexcept;
  std::vector<int> left_degrees() const;
  std::vector<int> right_degrees() const;

  /// Part-swapped graph: p and q exchange roles.
  BipartiteGraph transposed() const;

  /// Rows and columns relabeled: new row i is old row row_perm[i], likewise
  /// for columns.
  BipartiteGraph permuted(std::vector<int> const &row_perm,
                          std::vector<int> const &col_perm) const;

  friend bool operator==(BipartiteGraph const &,
                         BipartiteGraph const &) = default;

private:
  int p_;
  int q_;
  int e_;
  std::vector<std::uint64_t> rows_;
};

/// Sorted (non-increasing) degree sequences of both parts.
struct DegreeProfile {
  std::vector<int> d;
  std::vector<int> dprime;
  int e = 0;

  int p() const noexcept { return static_cast<int>(d.size()); }
  int q() const noexcept { return static_cast<int>(dprime.size()); }

  /// Validates the handshake and ordering invariants; throws DomainError.
  static DegreeProfile from_sequences(std::vector<int> d,
                                      std::vector<int> dprime);
};

/// G = K_{s',t'} + H with H biregular on the remaining (p-s', q-t') vertices.
/// left_rest/right_rest name the original vertices kept in h, in h's order.
struct Decomposition {
  int s_prime = 0;
  int t_prime = 0;
  BipartiteGraph h;
  bool h_biregular = false;
  std::vector<int> left_full;
  std::vector<int> right_full;
  std::vector<int> left_rest;
  std::vector<int> right_rest;
};

struct CommonNeighbors {
  IntMatrix left;  // B B^T
  IntMatrix right; // B^T B
};

BipartiteGraph from_biadjacency(std::vector<std::vector<int>> const &rows);
BipartiteGraph complete_bipartite(int p, int q);
BipartiteGraph empty_bipartite(int s, int t);

/// H + H': union plus every edge between H's left part and H''s right
/// part and between H''s left part and H's right part. H's vertices come
/// first in each part of the result.
BipartiteGraph bipartite_sum(BipartiteGraph const &h, BipartiteGraph const &hp);

/// K_{p,q} minus pq-e edges at one vertex of the part of order min(p,q).
BipartiteGraph k_bracket(int p, int q, int e);

/// K_{p,q} minus pq-e edges at one vertex of the part of order max(p,q).
BipartiteGraph k_brace(int p, int q, int e);

DegreeProfile degree_profile(BipartiteGraph const &g);
CommonNeighbors common_neighbors(BipartiteGraph const &g);

bool is_biregular(BipartiteGraph const &g);
bool is_connected(BipartiteGraph const &g);
bool is_complete(BipartiteGraph const &g);

/// Connected components over the p+q vertices. Vertex index i < p is u_i,
/// index p+j is v_j.
std::vector<std::vector<int>> connected_components(BipartiteGraph const &g);

/// Splits off every full-degree vertex and checks that the rest is
/// biregular. Complete graphs decompose as s'=t'=0, h=g. Returns nullopt when
/// the residual is not biregular. Throws PreconditionError if g is
/// disconnected.
std::optional<Decomposition> decompose_ks_plus_biregular(BipartiteGraph const &g);

/// Rebuilds K_{s',t'} + h (with s' or t' possibly zero).
BipartiteGraph reconstruct(Decomposition const &dec);

/// Canonical representative under independent row and column permutations
/// (parts never swapped). Exact; requires min(p,q) <= 8, ScaleError beyond.
BipartiteGraph canonical_graph(BipartiteGraph const &g);

/// "pxq:r0,r1,..." rendering of canonical_graph, rows as 0/1 strings.
std::string canonical_form(BipartiteGraph const &g);

/// Matrix rendering "pxq:r0,r1,..." without canonicalization.
std::string matrix_string(BipartiteGraph const &g);

/// Inverse of matrix_string / canonical_form.
BipartiteGraph graph_from_matrix_string(std::string const &s);

} // namespace bispec

#endif // BISPEC_GRAPH_HPP
