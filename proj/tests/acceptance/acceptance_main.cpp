// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bispec/bounds.hpp"
#include "bispec/errors.hpp"
#include "bispec/graph.hpp"
#include "bispec/search.hpp"
#include "bispec/spectral.hpp"
#include "oracles.hpp"

namespace {

using namespace bispec;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void check(bool cond, std::string const &what)
  {
    if (!cond && ok) {
      ok = false;
      note << "first failure: " << what << "; ";
    }
  }
};

int failures = 0;

void criterion(int id, char const *title, double budget_s,
               std::function<void(Outcome &)> const &body)
{
  Outcome out;
  auto const start = Clock::now();
  try {
    body(out);
  } catch (std::exception const &err) {
    out.ok = false;
    out.note << "exception: " << err.what() << "; ";
  }
  auto const secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs > budget_s) {
    out.ok = false;
    out.note << "over budget; ";
  }
  failures += !out.ok;
  std::printf("%s %2d %s [%.2fs / %.0fs] %s\n", out.ok ? "PASS" : "FAIL", id, title,
              secs, budget_s, out.note.str().c_str());
  std::fflush(stdout);
}

std::string cell(int p, int q, int e)
{
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(e) + ")";
}

// Every class of K(p,q,e) with pq <= 16 plus 1000 random graphs with
// p,q <= 10; shared by the bound criteria.
std::vector<BipartiteGraph> const &bound_corpus()
{
  static std::vector<BipartiteGraph> const corpus = [] {
    std::vector<BipartiteGraph> out;
    for (int p = 1; p <= 16; ++p)
      for (int q = 1; p * q <= 16; ++q)
        for (int e = 0; e <= p * q; ++e)
          for_each_class({p, q, e}, [&](BipartiteGraph const &g) { out.push_back(g); });
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 1000; ++k)
      out.push_back(oracle::random_graph(rng, 10, 10));
    return out;
  }();
  return corpus;
}

std::uint64_t binomial(int n, int k)
{
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

} // namespace

int main()
{
  criterion(1, "closed-form extremal radii match power iteration", 5, [](Outcome &out) {
    int cells = 0;
    for (int p = 1; p <= 6; ++p)
      for (int q = 1; q <= 6; ++q)
        for (int e = 0; e < p * q; ++e) {
          if (p * q - e > std::min(p, q))
            continue;
          ++cells;
          auto const brace = spectral_radius(k_brace(p, q, e));
          out.check(std::abs(brace - rho_k_brace_closed(p, q, e)) <= 1e-8,
                    "brace " + cell(p, q, e));
          auto const bracket = spectral_radius(k_bracket(p, q, e));
          // phi_{p,q}(q-pq+e, p-1), written for p <= q.
          auto const a = std::min(p, q), b = std::max(p, q);
          auto const closed = phi_pq_closed(a, b, e, b - a * b + e, a - 1);
          out.check(std::abs(bracket - closed) <= 1e-8, "bracket " + cell(p, q, e));
          out.check(std::abs(closed - rho_k_bracket_closed(p, q, e)) <= 1e-12,
                    "bracket closed form " + cell(p, q, e));
        }
    out.note << cells << " cells";
  });

  criterion(2, "figure identities", 1, [](Outcome &out) {
    out.check(canonical_form(k_brace(2, 3, 5)) == canonical_form(k_bracket(2, 3, 5)),
              "brace(2,3,5) != bracket(2,3,5)");
    // Largest eigenvalue of the 2x2 left Gram matrix [[a,b],[b,c]].
    auto gram_top = [](BipartiteGraph const &g) {
      auto const cn = common_neighbors(g);
      double const a = cn.left(0, 0), b = cn.left(0, 1), c = cn.left(1, 1);
      return std::sqrt(((a + c) + std::sqrt((a - c) * (a - c) + 4 * b * b)) / 2);
    };
    auto const brace = k_brace(2, 3, 5);
    auto const bracket = k_bracket(2, 4, 5);
    auto const r1 = spectral_radius(brace);
    auto const r2 = spectral_radius(bracket);
    out.check(std::abs(gram_top(brace) - 2.135779205) < 1e-9, "gram oracle (2,3,5)");
    out.check(std::abs(gram_top(bracket) - 2.074313) < 1e-6, "gram oracle (2,4,5)");
    out.check(std::abs(r1 - gram_top(brace)) < 1e-9, "rho(2,3,5)");
    out.check(std::abs(r2 - gram_top(bracket)) < 1e-9, "rho(2,4,5)");
    char buf[96];
    std::snprintf(buf, sizeof buf, "rho=%.9f, %.6f", r1, r2);
    out.note << buf;
  });

  criterion(3, "every phi_{s,t} cell dominates rho", 60, [](Outcome &out) {
    long cells = 0;
    for (auto const &g : bound_corpus()) {
      auto const rho = spectral_radius(g);
      auto const prof = degree_profile(g);
      for (int s = 1; s <= g.p(); ++s)
        for (int t = 1; t <= g.q(); ++t, ++cells)
          out.check(rho <= phi(prof, s, t).phi + 1e-9, matrix_string(g));
      out.check(rho <= bound_sqrt_e(g).value + 1e-9, "sqrt(e) " + matrix_string(g));
      out.check(rho <= bound_d1d1(g).value + 1e-9, "sqrt(d1 d'1) " + matrix_string(g));
    }
    out.note << bound_corpus().size() << " graphs, " << cells << " cells";
  });

  criterion(4, "tightness iff K_{s',t'}+H decomposition", 120, [](Outcome &out) {
    long graphs = 0, pairs = 0, tight = 0;
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; q <= 4; ++q)
        for (int e = 1; e <= p * q; ++e)
          oracle::for_each_labeled(p, q, e, [&](BipartiteGraph const &g) {
            if (!is_connected(g))
              return;
            ++graphs;
            for (int s = 1; s <= p; ++s)
              for (int t = 1; t <= q; ++t) {
                ++pairs;
                try {
                  tight += equality_case_check(g, s, t).tight;
                } catch (TheoremViolation const &err) {
                  out.check(false, err.what());
                }
              }
          });
    out.note << graphs << " connected labeled graphs, " << pairs << " (s,t) pairs, "
             << tight << " tight, 0 violations";
  });

  criterion(5, "scaling certificate soundness", 30, [](Outcome &out) {
    std::mt19937_64 rng(777);
    int tight = 0;
    for (int k = 0; k < 1000; ++k) {
      auto const g = oracle::random_graph(rng, 10, 10);
      std::uniform_int_distribution<int> sd(1, g.p()), td(1, g.q());
      auto const s = sd(rng), t = td(rng);
      try {
        auto const rep = scaling_certificate(g, s, t);
        out.check(rep.verdict, "verdict " + matrix_string(g));
        auto const rho = oracle::rho(g);
        out.check(rho * rho <= rep.max_row_sum + 1e-9, "rho^2 above row sums");
        auto const phi_val = std::sqrt(rep.phi_sq);
        if (approx_tight(phi_val, rho)) {
          ++tight;
          out.check(std::abs(rep.max_row_sum - rep.phi_sq) <= 1e-7,
                    "tight cell row sum " + matrix_string(g));
        }
      } catch (CertificateViolation const &err) {
        out.check(false, err.what());
      }
    }
    out.note << "1000 triples, " << tight << " tight";
  });

  criterion(6, "quartic identity and specializations", 60, [](Outcome &out) {
    long cells = 0;
    for (auto const &g : bound_corpus()) {
      auto const prof = degree_profile(g);
      auto const grid = phi_grid(g);
      for (int s = 1; s <= g.p(); ++s)
        for (int t = 1; t <= g.q(); ++t, ++cells) {
          auto const prm = phi(prof, s, t);
          auto const f2 = prm.phi_sq();
          auto const scale = std::max(1.0, f2 * f2);
          out.check(std::abs(f2 * f2 - prm.X * f2 + prm.Y) <= 1e-9 * scale,
                    "quartic " + matrix_string(g));
        }
      out.check(std::abs(grid.at(1, 1) -
                         std::sqrt(double(prof.d.front()) * prof.dprime.front())) <= 1e-12,
                "phi_11 " + matrix_string(g));
      out.check(std::abs(phi_1q(prof) - grid.at(1, g.q())) <= 1e-12, "phi_1q");
      out.check(std::abs(phi_p1(prof) - grid.at(g.p(), 1)) <= 1e-12, "phi_p1");
    }
    out.note << cells << " cells";
  });

  criterion(7, "phi_{p,q} decreasing in d_p", 10, [](Outcome &out) {
    long points = 0;
    double worst = -1e300;
    double const h = 1e-5;
    for (int p = 2; p <= 8; ++p)
      for (int q = 1; q <= 8; ++q)
        for (int dq = 1; dq <= p - 1; ++dq)
          for (int e = q * dq; e < p * q; ++e)
            for (int dp = 0; p * dp <= e; ++dp) {
              ++points;
              auto const analytic = phi_pq_partial_dp(p, q, e, dp, dq);
              auto const slope = (phi_pq_continuous(p, q, e, dp + h, dq) -
                                  phi_pq_continuous(p, q, e, dp - h, dq)) /
                                 (2 * h);
              worst = std::max(worst, analytic);
              auto const where = cell(p, q, e) + " d_p=" + std::to_string(dp) +
                                 " d'_q=" + std::to_string(dq);
              out.check(analytic < 0 && std::isfinite(analytic), "analytic " + where);
              out.check(slope < 0 && std::isfinite(slope), "finite difference " + where);
            }
    out.note << points << " points, max derivative " << worst;
  });

  criterion(8, "extremal degree-line inequality and reduction step", 10, [](Outcome &out) {
    long lemma = 0, chain = 0;
    for (int p = 1; p <= 8; ++p)
      for (int q = 1; q <= 8; ++q)
        for (int e = p * q - std::min(p, q) + 1; e < p * q; ++e) {
          auto const top = rho_k_brace_closed(p, q, e);
          auto const line = e - (p - 1) * (q - 1);
          for (int dp = 1; dp <= q - 1; ++dp) {
            auto const dq = line - dp;
            if (dq < 1 || dq > p - 1)
              continue;
            ++lemma;
            out.check(phi_pq_closed(p, q, e, dp, dq) <= top + 1e-9,
                      "degree line " + cell(p, q, e));
          }
          for (int dq = 1; dq <= p - 1; ++dq) {
            auto const ep = e - (p - 1) * (q - 1) - dq;
            if (ep < 1 || ep > q - 1)
              continue;
            for (int dp = ep; dp <= q - 1; ++dp) {
              if (p * dp > e || q * dq > e)
                continue;
              ++chain;
              auto const lhs = phi_pq_closed(p, q, e, dp, dq);
              auto const mid = phi_pq_closed(p, q, e, ep, dq);
              out.check(lhs <= mid + 1e-9 && mid <= top + 1e-9,
                        "chain " + cell(p, q, e) + " d_p=" + std::to_string(dp));
            }
          }
        }
    out.note << lemma << " line tuples, " << chain << " chain tuples";
  });

  criterion(9, "exhaustive confirmation of the brace maximum", 600, [](Outcome &out) {
    int cells = 0;
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; q <= 4; ++q)
        for (int e = 0; e < p * q; ++e) {
          if (!conjecture2_applies(p, q, e))
            continue;
          ++cells;
          auto const rec = verify_conjecture2(p, q, e);
          out.check(rec.verdict == Verdict::confirmed, "verdict " + cell(p, q, e));
          auto const want = canonical_form(k_brace(p, q, e));
          out.check(std::any_of(rec.maximizers.begin(), rec.maximizers.end(),
                                [&](Maximizer const &m) { return m.form == want; }),
                    "maximizer " + cell(p, q, e));
        }
    out.note << cells << " cells confirmed";
  });

  criterion(10, "enumeration completeness and shard partition", 120, [](Outcome &out) {
    int cells = 0;
    for (int p = 1; p <= 16; ++p)
      for (int q = 1; p * q <= 16; ++q)
        for (int e = 0; e <= p * q; ++e) {
          ++cells;
          std::uint64_t total = 0;
          std::vector<std::string> whole;
          for_each_class({p, q, e}, [&](BipartiteGraph const &g) {
            total += labeled_orbit_size(g);
            whole.push_back(canonical_form(g));
          });
          out.check(total == binomial(p * q, e), "orbit sum " + cell(p, q, e));
          std::sort(whole.begin(), whole.end());
          for (int count : {1, 2, 7}) {
            std::vector<std::string> joined;
            for (int k = 0; k < count; ++k)
              for_each_class({p, q, e, false, Shard{k, count}},
                             [&](BipartiteGraph const &g) {
                               joined.push_back(canonical_form(g));
                             });
            std::sort(joined.begin(), joined.end());
            out.check(joined == whole,
                      "shards " + std::to_string(count) + " " + cell(p, q, e));
          }
        }
    out.note << cells << " cells";
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
