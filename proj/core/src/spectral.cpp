#include "bispec/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bispec/bounds.hpp"
#include "bispec/errors.hpp"

namespace bispec {

namespace {

// Collatz-Wielandt power iteration on a nonnegative irreducible symmetric
// matrix with positive diagonal. Returns sqrt of its Perron root.
double gram_root(IntMatrix const &gram, double tol)
{
  auto const n = gram.rows();
  if (n == 1)
    return std::sqrt(static_cast<double>(gram(0, 0)));

  std::vector<double> x(n, 1.0), y(n);
  double lo = 0, hi = 0;
  for (long iter = 0; iter < power_iteration_cap; ++iter) {
    lo = std::numeric_limits<double>::infinity();
    hi = 0;
    double top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        acc += static_cast<double>(gram(i, k)) * x[k];
      y[i] = acc;
      auto const ratio = acc / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      top = std::max(top, acc);
    }
    auto const rho_lo = std::sqrt(lo);
    auto const rho_hi = std::sqrt(hi);
    if (rho_hi - rho_lo < tol)
      return 0.5 * (rho_lo + rho_hi);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = y[i] / top;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "spectral_radius: no convergence after " << power_iteration_cap
      << " iterations; rho in [" << std::sqrt(lo) << ", " << std::sqrt(hi) << "]";
  throw ConvergenceError(msg.str(), std::sqrt(lo), std::sqrt(hi));
}

} // namespace

double spectral_radius(BipartiteGraph const &g, double tol)
{
  if (!(tol > 0))
    throw DomainError("spectral_radius: tol must be positive");
  if (g.edges() == 0)
    return 0.0;

  auto const p = g.p();
  double rho = 0;
  for (auto const &comp : connected_components(g)) {
    std::vector<int> left, right;
    for (auto v : comp)
      (v < p ? left : right).push_back(v < p ? v : v - p);
    if (left.empty() || right.empty())
      continue; // isolated vertex

    IntMatrix gram;
    if (left.size() <= right.size()) {
      gram = IntMatrix(left.size(), left.size());
      for (std::size_t a = 0; a < left.size(); ++a)
        for (std::size_t b = 0; b < left.size(); ++b)
          gram(a, b) = std::popcount(g.row(left[a]) & g.row(left[b]));
    } else {
      std::vector<std::uint64_t> cols(right.size());
      for (std::size_t a = 0; a < right.size(); ++a)
        cols[a] = g.column(right[a]);
      gram = IntMatrix(right.size(), right.size());
      for (std::size_t a = 0; a < right.size(); ++a)
        for (std::size_t b = 0; b < right.size(); ++b)
          gram(a, b) = std::popcount(cols[a] & cols[b]);
    }
    rho = std::max(rho, gram_root(gram, tol));
  }
  return rho;
}

QuotientMatrix quotient_matrix(BipartiteGraph const &g,
                               std::vector<std::vector<int>> const &partition,
                               QuotientOf of)
{
  auto const p = g.p();
  auto const n = p + g.q();

  std::vector<int> seen(n, 0);
  for (auto const &block : partition) {
    if (block.empty())
      throw PartitionError("quotient_matrix: empty block");
    for (auto v : block) {
      if (v < 0 || v >= n)
        throw PartitionError("quotient_matrix: index " + std::to_string(v) +
                             " out of range");
      if (seen[v]++)
        throw PartitionError("quotient_matrix: index " + std::to_string(v) +
                             " appears twice");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw PartitionError("quotient_matrix: blocks do not cover every vertex");

  // Full (p+q)x(p+q) integer matrix; fine at the sizes quotients are used.
  IntMatrix a(n, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < g.q(); ++j)
      if (g.has_edge(i, j))
        a(i, p + j) = a(p + j, i) = 1;
  if (of == QuotientOf::square) {
    auto const cn = common_neighbors(g);
    a = IntMatrix(n, n);
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k)
        a(i, k) = cn.left(i, k);
    for (int j = 0; j < g.q(); ++j)
      for (int l = 0; l < g.q(); ++l)
        a(p + j, p + l) = cn.right(j, l);
  }

  auto const m = partition.size();
  QuotientMatrix out{RealMatrix(m, m), true, partition};
  for (std::size_t bi = 0; bi < m; ++bi) {
    for (std::size_t bj = 0; bj < m; ++bj) {
      long long total = 0;
      long long first = -1;
      for (auto row : partition[bi]) {
        long long sum = 0;
        for (auto col : partition[bj])
          sum += a(row, col);
        total += sum;
        if (first < 0)
          first = sum;
        else if (sum != first)
          out.equitable = false;
      }
      out.entries(bi, bj) =
          static_cast<double>(total) / static_cast<double>(partition[bi].size());
    }
  }
  return out;
}

std::vector<std::vector<int>> decomposition_partition(BipartiteGraph const &g,
                                                      Decomposition const &dec)
{
  std::vector<std::vector<int>> blocks;
  auto add = [&](std::vector<int> const &ids, int offset) {
    if (ids.empty())
      return;
    auto &b = blocks.emplace_back();
    for (auto v : ids)
      b.push_back(v + offset);
  };
  add(dec.left_full, 0);
  add(dec.left_rest, 0);
  add(dec.right_full, g.p());
  add(dec.right_rest, g.p());
  return blocks;
}

namespace {

using Poly = std::vector<double>; // ascending coefficients

Poly poly_mul(Poly const &a, Poly const &b)
{
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

void poly_add_scaled(Poly &acc, Poly const &term, double scale)
{
  if (acc.size() < term.size())
    acc.resize(term.size(), 0.0);
  for (std::size_t i = 0; i < term.size(); ++i)
    acc[i] += scale * term[i];
}

// det(lambda I - M) restricted to rows [row, n) and the given columns, by
// cofactor expansion along the first remaining row.
Poly char_poly_minor(RealMatrix const &m, std::size_t row,
                     std::vector<std::size_t> const &cols)
{
  if (cols.empty())
    return {1.0};
  Poly det{0.0};
  double sign = 1.0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    auto const c = cols[k];
    Poly entry = row == c ? Poly{-m(row, c), 1.0} : Poly{-m(row, c)};
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (l != k)
        rest.push_back(cols[l]);
    poly_add_scaled(det, poly_mul(entry, char_poly_minor(m, row + 1, rest)), sign);
    sign = -sign;
  }
  return det;
}

double poly_eval(Poly const &p, double x)
{
  double acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

double poly_scale(Poly const &p, double x)
{
  double acc = 0, power = 1, ax = std::max(1.0, std::abs(x));
  for (auto c : p) {
    acc += std::abs(c) * power;
    power *= ax;
  }
  return acc;
}

Poly derivative(Poly const &p)
{
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(static_cast<double>(i) * p[i]);
  return d;
}

// Runs to machine precision; the caller's tolerance is far looser.
double bisect(Poly const &p, double a, double b)
{
  auto fa = poly_eval(p, a);
  for (int iter = 0; iter < 2000; ++iter) {
    auto const mid = 0.5 * (a + b);
    if (mid <= a || mid >= b)
      break;
    auto const fm = poly_eval(p, mid);
    if (fm == 0)
      return mid;
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Values below this are indistinguishable from zero under Horner rounding.
double eval_noise(Poly const &p, double x)
{
  return 64.0 * std::numeric_limits<double>::epsilon() * poly_scale(p, x);
}

// All real roots in (lo, hi), multiple roots reported once. Between
// consecutive critical points p is monotone, so each such interval holds at
// most one simple root. Multiple roots sit on critical points, where rounding
// noise can fake sign changes nearby; intervals ending on such a point are
// not searched again.
std::vector<double> real_roots(Poly p, double lo, double hi)
{
  while (p.size() > 1 && p.back() == 0)
    p.pop_back();
  if (p.size() <= 1)
    return {};
  if (p.size() == 2)
    return {-p[0] / p[1]};

  auto const crit = real_roots(derivative(p), lo, hi);
  std::vector<double> pts{lo};
  for (auto c : crit)
    if (c > pts.back() && c < hi)
      pts.push_back(c);
  pts.push_back(hi);

  std::vector<bool> zero(pts.size(), false);
  std::vector<double> roots;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k)
    if (std::abs(poly_eval(p, pts[k])) <= eval_noise(p, pts[k])) {
      zero[k] = true;
      roots.push_back(pts[k]);
    }
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (zero[k] || zero[k + 1])
      continue;
    auto const fa = poly_eval(p, pts[k]);
    auto const fb = poly_eval(p, pts[k + 1]);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0))
      roots.push_back(bisect(p, pts[k], pts[k + 1]));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double shifted_power_iteration(RealMatrix const &m, double shift, double tol)
{
  auto const n = m.rows();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 1.0 + static_cast<double>(i) / (10.0 * static_cast<double>(n));

  double mu = 0;
  for (long iter = 0; iter < power_iteration_cap; ++iter) {
    double xx = 0, xy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = shift * x[i];
      for (std::size_t k = 0; k < n; ++k)
        acc += m(i, k) * x[k];
      y[i] = acc;
      xx += x[i] * x[i];
      xy += x[i] * acc;
    }
    mu = xy / xx;
    double resid = 0, yy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      resid += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
      yy += y[i] * y[i];
    }
    if (std::sqrt(resid / xx) < tol)
      return mu - shift;
    auto const norm = std::sqrt(yy);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = y[i] / norm;
  }
  throw ConvergenceError("max_eigenvalue_small: shifted power iteration did "
                         "not converge",
                         mu - shift, mu - shift);
}

} // namespace

double max_eigenvalue_small(RealMatrix const &m, double tol)
{
  auto const n = m.rows();
  if (n == 0 || n != m.cols())
    throw DimensionError("max_eigenvalue_small: expected a non-empty square matrix");
  if (n > 8)
    throw DimensionError("max_eigenvalue_small: dimension " + std::to_string(n) +
                         " exceeds 8");

  // Every eigenvalue lies within the infinity-norm disc.
  double bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j)
      row += std::abs(m(i, j));
    bound = std::max(bound, row);
  }

  if (n <= 4) {
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    auto const poly = char_poly_minor(m, 0, cols);
    auto const roots = real_roots(poly, -bound - 1.0, bound + 1.0);
    if (roots.empty())
      throw DomainError("max_eigenvalue_small: no real eigenvalue");
    return roots.back();
  }
  return shifted_power_iteration(m, bound + 1.0, tol);
}

CertificateReport scaling_certificate(BipartiteGraph const &g, int s, int t,
                                      double tol)
{
  auto const p = g.p();
  auto const q = g.q();
  if (s < 1 || s > p || t < 1 || t > q)
    throw DomainError("scaling_certificate: (s,t) = (" + std::to_string(s) + "," +
                      std::to_string(t) + ") outside [1," + std::to_string(p) +
                      "]x[1," + std::to_string(q) + "]");

  CertificateReport rep;
  rep.s = s;
  rep.t = t;

  auto const ldeg = g.left_degrees();
  auto const rdeg = g.right_degrees();
  rep.left_order.resize(p);
  std::iota(rep.left_order.begin(), rep.left_order.end(), 0);
  std::stable_sort(rep.left_order.begin(), rep.left_order.end(),
                   [&](int a, int b) { return ldeg[a] > ldeg[b]; });
  rep.right_order.resize(q);
  std::iota(rep.right_order.begin(), rep.right_order.end(), 0);
  std::stable_sort(rep.right_order.begin(), rep.right_order.end(),
                   [&](int a, int b) { return rdeg[a] > rdeg[b]; });

  auto const sorted = g.permuted(rep.left_order, rep.right_order);
  auto const profile = degree_profile(sorted);
  auto const params = phi(profile, s, t);
  rep.phi_sq = params.phi_sq();

  // phi^2 equals an excess sum exactly when d_s d'_t = 0 and that sum is e.
  auto const degenerate = params.d_s * params.d_t_prime == 0;
  auto const left_flat = degenerate && params.excess_left == profile.e;
  auto const right_flat = degenerate && params.excess_right == profile.e;

  std::vector<double> weight(p + q, 1.0);
  for (int k = 0; k + 1 < s; ++k) {
    auto const w = left_flat
        ? 1.0
        : 1.0 + static_cast<double>(params.d_t_prime * (profile.d[k] - params.d_s)) /
                    (rep.phi_sq - static_cast<double>(params.excess_left));
    rep.x.push_back(w);
    weight[k] = w;
  }
  for (int l = 0; l + 1 < t; ++l) {
    auto const w = right_flat
        ? 1.0
        : 1.0 + static_cast<double>(params.d_s * (profile.dprime[l] - params.d_t_prime)) /
                    (rep.phi_sq - static_cast<double>(params.excess_right));
    rep.xprime.push_back(w);
    weight[p + l] = w;
  }

  auto const cn = common_neighbors(sorted);
  rep.row_sums.resize(p + q);
  for (int i = 0; i < p; ++i) {
    double acc = 0;
    for (int k = 0; k < p; ++k)
      acc += static_cast<double>(cn.left(i, k)) * weight[k];
    rep.row_sums[i] = acc / weight[i];
  }
  for (int j = 0; j < q; ++j) {
    double acc = 0;
    for (int l = 0; l < q; ++l)
      acc += static_cast<double>(cn.right(j, l)) * weight[p + l];
    rep.row_sums[p + j] = acc / weight[p + j];
  }
  rep.max_row_sum = *std::max_element(rep.row_sums.begin(), rep.row_sums.end());
  rep.verdict = rep.max_row_sum <= rep.phi_sq + tol;
  if (!rep.verdict) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "scaling_certificate: max row sum " << rep.max_row_sum
        << " exceeds phi^2 = " << rep.phi_sq << " at (s,t) = (" << s << "," << t
        << ") for " << matrix_string(g);
    throw CertificateViolation(msg.str());
  }
  return rep;
}

} // namespace bispec
