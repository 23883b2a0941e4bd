#ifndef BISPEC_TESTS_ORACLES_HPP
#define BISPEC_TESTS_ORACLES_HPP

// Independent reference computations for the test suites. Nothing here may
// call into the code paths it is used to check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bispec/graph.hpp"

namespace bispec::oracle {

/// Largest eigenvalue of the full (p+q)x(p+q) adjacency matrix by a dense
/// symmetric eigensolver.
inline double rho(BipartiteGraph const &g)
{
  auto const n = g.p() + g.q();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < g.p(); ++i)
    for (int j = 0; j < g.q(); ++j)
      if (g.has_edge(i, j))
        a(i, g.p() + j) = a(g.p() + j, i) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

/// Largest real part among eigenvalues of a general dense matrix.
inline double max_real_eigenvalue(std::vector<std::vector<double>> const &m)
{
  auto const n = static_cast<int>(m.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = m[i][j];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  double best = -1e300;
  for (int i = 0; i < n; ++i)
    if (std::abs(solver.eigenvalues()[i].imag()) < 1e-9)
      best = std::max(best, solver.eigenvalues()[i].real());
  return best;
}

inline std::string raw(BipartiteGraph const &g)
{
  std::string s;
  for (int i = 0; i < g.p(); ++i)
    for (int j = 0; j < g.q(); ++j)
      s += g.has_edge(i, j) ? '1' : '0';
  return s;
}

/// Lexicographically smallest raw matrix over every row and column
/// permutation. Only for tiny graphs (p!q! work).
inline std::string brute_canonical(BipartiteGraph const &g)
{
  std::vector<int> rp(g.p()), cp(g.q());
  std::iota(rp.begin(), rp.end(), 0);
  std::string best;
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      std::string s;
      for (int i = 0; i < g.p(); ++i)
        for (int j = 0; j < g.q(); ++j)
          s += g.has_edge(rp[i], cp[j]) ? '1' : '0';
      if (best.empty() || s < best)
        best = s;
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return best;
}

inline BipartiteGraph from_mask(int p, int q, std::uint64_t mask)
{
  std::vector<std::uint64_t> rows(p, 0);
  for (int c = 0; c < p * q; ++c)
    if ((mask >> c) & 1u)
      rows[c / q] |= std::uint64_t{1} << (c % q);
  return BipartiteGraph(p, q, rows);
}

/// Every labeled graph in K(p,q,e) (p*q <= 20).
inline void for_each_labeled(int p, int q, int e,
                             std::function<void(BipartiteGraph const &)> const &visit)
{
  auto const cells = p * q;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask)
    if (std::popcount(mask) == e)
      visit(from_mask(p, q, mask));
}

inline BipartiteGraph random_graph(std::mt19937_64 &rng, int p, int q,
                                   double density)
{
  std::bernoulli_distribution coin(density);
  std::vector<std::uint64_t> rows(p, 0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      if (coin(rng))
        rows[i] |= std::uint64_t{1} << j;
  return BipartiteGraph(p, q, rows);
}

inline BipartiteGraph random_graph(std::mt19937_64 &rng, int max_p, int max_q)
{
  std::uniform_int_distribution<int> pd(1, max_p), qd(1, max_q);
  std::uniform_real_distribution<double> dens(0.1, 0.95);
  auto const p = pd(rng);
  auto const q = qd(rng);
  return random_graph(rng, p, q, dens(rng));
}

inline std::vector<int> random_permutation(std::mt19937_64 &rng, int n)
{
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline double binomial(int n, int k)
{
  double r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace bispec::oracle

#endif // BISPEC_TESTS_ORACLES_HPP
