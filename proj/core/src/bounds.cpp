#include "bispec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bispec/errors.hpp"

namespace bispec {

namespace {

double phi_from_xy(long long x, long long y)
{
  // X^2 - 4Y = (EL - ER)^2 + d_s d'_t (d_s d'_t + 2 EL + 2 ER) >= 0.
  auto const disc = x * x - 4 * y;
  return std::sqrt((static_cast<double>(x) + std::sqrt(static_cast<double>(disc))) / 2.0);
}

} // namespace

PhiParams phi(DegreeProfile const &profile, int s, int t)
{
  if (s < 1 || s > profile.p() || t < 1 || t > profile.q())
    throw DomainError("phi: (s,t) = (" + std::to_string(s) + "," +
                      std::to_string(t) + ") outside [1," +
                      std::to_string(profile.p()) + "]x[1," +
                      std::to_string(profile.q()) + "]");
  PhiParams out;
  out.s = s;
  out.t = t;
  out.d_s = profile.d[s - 1];
  out.d_t_prime = profile.dprime[t - 1];
  for (int i = 0; i + 1 < s; ++i)
    out.excess_left += profile.d[i] - out.d_s;
  for (int j = 0; j + 1 < t; ++j)
    out.excess_right += profile.dprime[j] - out.d_t_prime;
  out.X = out.d_s * out.d_t_prime + out.excess_left + out.excess_right;
  out.Y = out.excess_left * out.excess_right;
  out.phi = phi_from_xy(out.X, out.Y);
  return out;
}

bool BoundGrid::is_tight(int s, int t) const
{
  return std::find(tight_cells.begin(), tight_cells.end(), std::pair{s, t}) !=
         tight_cells.end();
}

BoundGrid phi_grid(BipartiteGraph const &g, double tol)
{
  auto const profile = degree_profile(g);
  BoundGrid grid;
  grid.values = RealMatrix(g.p(), g.q());
  grid.rho = spectral_radius(g, tol);
  grid.best_value = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= g.p(); ++s) {
    for (int t = 1; t <= g.q(); ++t) {
      auto const v = phi(profile, s, t).phi;
      grid.values(s - 1, t - 1) = v;
      if (v < grid.best_value) {
        grid.best_value = v;
        grid.best_s = s;
        grid.best_t = t;
      }
      if (approx_tight(v, grid.rho))
        grid.tight_cells.emplace_back(s, t);
    }
  }
  return grid;
}

double phi_1q(DegreeProfile const &profile)
{
  auto const q = profile.q();
  return std::sqrt(static_cast<double>(
      profile.e - static_cast<long long>(q - profile.d.front()) * profile.dprime.back()));
}

double phi_p1(DegreeProfile const &profile)
{
  auto const p = profile.p();
  return std::sqrt(static_cast<double>(
      profile.e - static_cast<long long>(p - profile.dprime.front()) * profile.d.back()));
}

double phi_pq_closed(int p, int q, int e, int d_p, int d_q_prime)
{
  if (p < 1 || q < 1 || d_p < 0 || d_q_prime < 0 ||
      static_cast<long long>(p) * d_p > e || static_cast<long long>(q) * d_q_prime > e)
    throw DomainError("phi_pq_closed: need 0 <= d_p, 0 <= d'_q, p d_p <= e, "
                      "q d'_q <= e");
  long long const pp = p, qq = q, ee = e, a = d_p, b = d_q_prime;
  auto const x = 2 * ee - (pp * a + qq * b - a * b);
  auto const y = (ee - pp * a) * (ee - qq * b);
  return phi_from_xy(x, y);
}

double phi_pq_continuous(int p, int q, int e, double d_p, double d_q_prime)
{
  double const w = p * d_p + q * d_q_prime - d_p * d_q_prime;
  double const disc = w * w - 4.0 * d_p * d_q_prime * (static_cast<double>(p) * q - e);
  return std::sqrt((2.0 * e - w + std::sqrt(disc)) / 2.0);
}

double phi_pq_partial_dp(int p, int q, int e, double d_p, int d_q_prime)
{
  if (d_q_prime < 1 || d_q_prime > p - 1 ||
      static_cast<long long>(q) * d_q_prime > e ||
      e >= static_cast<long long>(p) * q || d_p < 0 || p * d_p > e)
    throw DomainError("phi_pq_partial_dp: need 1 <= d'_q <= p-1, "
                      "q d'_q <= e < pq, 0 <= d_p, p d_p <= e");
  double const missing = static_cast<double>(p) * q - e;
  double const w = p * d_p + q * d_q_prime - d_p * d_q_prime;
  double const disc = w * w - 4.0 * d_p * d_q_prime * missing;
  if (!(disc > 0))
    throw DomainError("phi_pq_partial_dp: discriminant vanishes");
  return -p + d_q_prime +
         (w * (p - d_q_prime) - 2.0 * d_q_prime * missing) / std::sqrt(disc);
}

double rho_k_brace_closed(int p, int q, int e)
{
  auto const missing = static_cast<long long>(p) * q - e;
  if (p < 1 || q < 1 || missing < 1 || missing > std::min(p, q))
    throw DomainError("rho_k_brace_closed: need 1 <= pq-e <= min(p,q)");
  if (p > q)
    std::swap(p, q);
  long long const ee = e;
  auto const disc = ee * ee - 4LL * (q - 1) * (p - missing) * missing;
  return std::sqrt((static_cast<double>(ee) + std::sqrt(static_cast<double>(disc))) / 2.0);
}

double rho_k_bracket_closed(int p, int q, int e)
{
  auto const missing = static_cast<long long>(p) * q - e;
  if (p < 1 || q < 1 || missing < 1 || missing > std::max(p, q))
    throw DomainError("rho_k_bracket_closed: need 1 <= pq-e <= max(p,q)");
  if (p > q)
    std::swap(p, q);
  return phi_pq_closed(p, q, e, static_cast<int>(q - missing), p - 1);
}

ClassicalBound bound_sqrt_e(BipartiteGraph const &g)
{
  ClassicalBound out{std::sqrt(static_cast<double>(g.edges())), std::nullopt};
  // Every non-isolated left vertex must see exactly the non-isolated right
  // vertices.
  std::uint64_t support = 0;
  for (int i = 0; i < g.p(); ++i)
    support |= g.row(i);
  bool complete_plus_isolated = true;
  for (int i = 0; i < g.p(); ++i)
    if (g.row(i) != 0 && g.row(i) != support)
      complete_plus_isolated = false;
  out.equality = complete_plus_isolated;
  return out;
}

ClassicalBound bound_d1d1(BipartiteGraph const &g)
{
  auto const profile = degree_profile(g);
  ClassicalBound out{
      std::sqrt(static_cast<double>(profile.d.front()) * profile.dprime.front()),
      std::nullopt};
  if (is_connected(g))
    out.equality = is_biregular(g);
  return out;
}

EqualityDiagnosis equality_case_check(BipartiteGraph const &g, int s, int t,
                                      double tol)
{
  if (!is_connected(g))
    throw PreconditionError("equality_case_check: graph is disconnected");
  EqualityDiagnosis out;
  out.s = s;
  out.t = t;
  out.phi = phi(degree_profile(g), s, t).phi;
  out.rho = spectral_radius(g, tol);
  out.tight = approx_tight(out.phi, out.rho);
  out.decomposition = decompose_ks_plus_biregular(g);
  out.decomposition_condition = out.decomposition &&
                                out.decomposition->s_prime < s &&
                                out.decomposition->t_prime < t;
  if (out.tight != out.decomposition_condition) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "equality_case_check: phi_{" << s << "," << t << "} = " << out.phi
        << ", rho = " << out.rho << " (tight=" << out.tight
        << ") but decomposition condition is " << out.decomposition_condition
        << " for " << matrix_string(g);
    throw TheoremViolation(msg.str());
  }
  return out;
}

} // namespace bispec
