#ifndef BISPEC_SPECTRAL_HPP
#define BISPEC_SPECTRAL_HPP

#include <vector>

#include "bispec/graph.hpp"
#include "bispec/matrix.hpp"

namespace bispec {

inline constexpr double default_rho_tol = 1e-10;
inline constexpr double default_rho_sq_tol = 1e-9;
inline constexpr long power_iteration_cap = 1'000'000;

/// Largest adjacency eigenvalue, to absolute error tol.
///
/// Runs power iteration per connected component on the smaller Gram matrix
/// (B B^T or B^T B), starting from the all-ones vector, and stops once the
/// Collatz-Wielandt bracket [sqrt(min ratio), sqrt(max ratio)] is narrower
/// than tol. Edgeless graphs give 0. Throws ConvergenceError (carrying the
/// last bracket) after power_iteration_cap steps.
double spectral_radius(BipartiteGraph const &g, double tol = default_rho_tol);

enum class QuotientOf { adjacency, square };

/// Block-average row sums of A or A^2 over a partition of the p+q vertices
/// (u_i is index i, v_j is index p+j).
struct QuotientMatrix {
  RealMatrix entries;
  bool equitable = false;
  std::vector<std::vector<int>> partition;
};

/// Throws PartitionError unless the blocks are non-empty, disjoint and cover
/// all p+q indices.
QuotientMatrix quotient_matrix(BipartiteGraph const &g,
                               std::vector<std::vector<int>> const &partition,
                               QuotientOf of = QuotientOf::adjacency);

/// Partition {full left, other left, full right, other right} of a
/// K_{s',t'} + H decomposition, empty blocks dropped.
std::vector<std::vector<int>> decomposition_partition(BipartiteGraph const &g,
                                                      Decomposition const &dec);

/// Largest real eigenvalue of a small square matrix with real spectrum.
/// n <= 4: real-root isolation on det(lambda I - M) expanded by cofactors.
/// 5 <= n <= 8: shifted power iteration. Throws DimensionError for n > 8 or
/// a non-square input.
double max_eigenvalue_small(RealMatrix const &m, double tol = 1e-12);

/// Proof replay of the phi_{s,t} bound: diagonal scaling U built from the
/// sorted degree sequences, and the row sums of U^{-1} A^2 U.
struct CertificateReport {
  int s = 0;
  int t = 0;
  double phi_sq = 0;
  std::vector<double> x;      // s-1 left weights
  std::vector<double> xprime; // t-1 right weights
  std::vector<double> row_sums; // p left rows then q right rows, sorted order
  double max_row_sum = 0;
  bool verdict = false;
  // Sorted position k holds original vertex left_order[k] (resp. right).
  std::vector<int> left_order;
  std::vector<int> right_order;
};

/// Vertices are relabeled by non-increasing degree first (ties by index).
/// Throws DomainError for (s,t) outside [1,p]x[1,q] and CertificateViolation
/// if some row sum exceeds phi^2 + tol.
CertificateReport scaling_certificate(BipartiteGraph const &g, int s, int t,
                                      double tol = default_rho_sq_tol);

} // namespace bispec

#endif // BISPEC_SPECTRAL_HPP
