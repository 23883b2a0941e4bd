#ifndef BISPEC_BOUNDS_HPP
#define BISPEC_BOUNDS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bispec/graph.hpp"
#include "bispec/matrix.hpp"
#include "bispec/spectral.hpp"

namespace bispec {

/// Relative tolerance used to call a bound tight against the computed rho.
inline constexpr double tight_rel_tol = 1e-7;

inline bool approx_tight(double bound, double rho, double rel = tight_rel_tol)
{
  auto const scale = bound > 1.0 ? bound : 1.0;
  auto const diff = bound > rho ? bound - rho : rho - bound;
  return diff <= rel * scale;
}

/// Parameters of phi_{s,t}. s and t are 1-based positions in the sorted
/// degree sequences; all integer quantities are exact.
struct PhiParams {
  int s = 0;
  int t = 0;
  long long d_s = 0;
  long long d_t_prime = 0;
  long long excess_left = 0;  // sum_{i<s} (d_i - d_s)
  long long excess_right = 0; // sum_{j<t} (d'_j - d'_t)
  long long X = 0;
  long long Y = 0;
  double phi = 0;

  double phi_sq() const { return phi * phi; }
};

/// phi_{s,t} = sqrt((X + sqrt(X^2 - 4Y)) / 2) with
/// X = d_s d'_t + excess_left + excess_right, Y = excess_left * excess_right.
/// Works on any valid profile, realized by a graph or not.
PhiParams phi(DegreeProfile const &profile, int s, int t);

struct BoundGrid {
  RealMatrix values; // values(s-1, t-1) = phi_{s,t}
  int best_s = 1;
  int best_t = 1;
  double best_value = 0;
  double rho = 0;
  std::vector<std::pair<int, int>> tight_cells; // 1-based (s,t)

  double at(int s, int t) const { return values(s - 1, t - 1); }
  bool is_tight(int s, int t) const;
};

BoundGrid phi_grid(BipartiteGraph const &g, double tol = default_rho_tol);

/// sqrt(e - (q - d_1) d'_q)
double phi_1q(DegreeProfile const &profile);
/// sqrt(e - (p - d'_1) d_p)
double phi_p1(DegreeProfile const &profile);

/// phi_{p,q} from (p, q, e, d_p, d'_q) alone. Throws DomainError unless
/// 0 <= d_p, 0 <= d'_q, p d_p <= e and q d'_q <= e.
double phi_pq_closed(int p, int q, int e, int d_p, int d_q_prime);

/// Same function with real-valued minimum degrees, for probing its shape.
double phi_pq_continuous(int p, int q, int e, double d_p, double d_q_prime);

/// d/d(d_p) of 2 phi_{p,q}^2 = X + sqrt(X^2 - 4Y). Domain:
/// 1 <= d'_q <= p-1, q d'_q <= e < pq, 0 <= d_p, p d_p <= e; DomainError
/// outside it.
double phi_pq_partial_dp(int p, int q, int e, double d_p, int d_q_prime);

/// rho(K_{p,q}^{{e}}) = sqrt((e + sqrt(e^2 - 4(q-1)(p-pq+e)(pq-e))) / 2)
/// for p <= q (parts swapped otherwise). Needs 1 <= pq-e <= min(p,q).
double rho_k_brace_closed(int p, int q, int e);

/// rho(K_{p,q}^{[e]}) = phi_{p,q}(q-pq+e, p-1) for p <= q (swapped
/// otherwise). Needs 1 <= pq-e <= max(p,q).
double rho_k_bracket_closed(int p, int q, int e);

struct ClassicalBound {
  double value = 0;
  // nullopt when the equality criterion does not apply (d1d1 on a
  // disconnected graph).
  std::optional<bool> equality;
};

/// rho <= sqrt(e); equality iff G is K_{a,b} plus isolated vertices.
ClassicalBound bound_sqrt_e(BipartiteGraph const &g);
/// rho <= sqrt(d_1 d'_1); for connected G equality iff biregular.
ClassicalBound bound_d1d1(BipartiteGraph const &g);

struct EqualityDiagnosis {
  int s = 0;
  int t = 0;
  double phi = 0;
  double rho = 0;
  bool tight = false;
  std::optional<Decomposition> decomposition;
  bool decomposition_condition = false; // s' < s and t' < t
};

/// Numerical tightness of phi_{s,t} against the structural characterization
/// G = K_{s',t'} + H (H biregular, s' < s, t' < t). Throws PreconditionError
/// on a disconnected graph and TheoremViolation if the two answers differ.
EqualityDiagnosis equality_case_check(BipartiteGraph const &g, int s, int t,
                                      double tol = default_rho_tol);

} // namespace bispec

#endif // BISPEC_BOUNDS_HPP
