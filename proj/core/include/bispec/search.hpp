#ifndef BISPEC_SEARCH_HPP
#define BISPEC_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bispec/graph.hpp"
#include "bispec/spectral.hpp"

namespace bispec {

/// Exhaustive enumeration is limited to p*q <= exhaustive_cap.
inline constexpr int exhaustive_cap = 25;

/// Two spectral radii within this relative distance count as a tie.
inline constexpr double maximizer_rel_tol = 1e-8;

inline double rho_slack(double rho)
{ return maximizer_rel_tol * (rho > 1.0 ? rho : 1.0); }

struct Shard {
  int index = 0;
  int count = 1;
};

/// One cell K(p,q,e) of the search, optionally restricted to one shard.
struct EnumerationSpec {
  int p = 1;
  int q = 1;
  int e = 0;
  bool dedupe_transpose = false; // only meaningful when p == q
  Shard shard;

  /// Throws DomainError on an invalid cell or shard.
  void validate() const;
};

enum class Verdict { confirmed, refuted, inapplicable, sampled };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct Maximizer {
  std::string form; // canonical form
  double rho = 0;

  friend bool operator==(Maximizer const &, Maximizer const &) = default;
};

struct SearchRecord {
  EnumerationSpec spec;
  long long class_count = 0;
  double max_rho = 0;
  std::vector<Maximizer> maximizers; // sorted by form
  std::optional<double> extremal_value;
  Verdict verdict = Verdict::inapplicable;
};

struct ConjectureVerdict {
  EnumerationSpec spec;
  long long class_count = 0;
  double max_rho = 0;
  std::optional<std::pair<int, int>> best_st;
  double witness_rho = 0;
  bool found = false;
  std::vector<std::pair<int, int>> witnesses; // every admissible hit, if asked
};

/// True iff 0 < pq - e < min(p,q).
bool conjecture2_applies(int p, int q, int e);

/// Isomorphism key: canonical_form, or the smaller of the forms of G and its
/// transpose when dedupe_transpose is set and p == q.
std::string class_key(BipartiteGraph const &g, bool dedupe_transpose);

/// Calls visit once per isomorphism class of K(p,q,e) owned by spec.shard,
/// passing the class's canonical representative. Order is deterministic.
/// Throws ScaleError when p*q > exhaustive_cap.
void for_each_class(EnumerationSpec const &spec,
                    std::function<void(BipartiteGraph const &)> const &visit);

std::vector<BipartiteGraph> enumerate_kpqe(EnumerationSpec const &spec);

/// Number of labeled graphs part-respecting isomorphic to g:
/// p! q! / |Aut(g)|. Needs min(p,q) <= 8 and max(p,q) <= 25.
std::uint64_t labeled_orbit_size(BipartiteGraph const &g);

/// Maximum spectral radius over the classes of spec's shard. The verdict is
/// set against rho(K_{p,q}^{{e}}) when 0 < pq-e < min(p,q); for a proper
/// shard it only reflects that shard until merged.
SearchRecord max_spectral(EnumerationSpec const &spec,
                          double tol = default_rho_tol);

/// Reduces shard records of one cell: counts add, maxima and tie lists
/// combine, verdict is recomputed.
SearchRecord merge_records(std::vector<SearchRecord> const &parts);

/// Runs spec's cell as `threads` shards concurrently and merges.
SearchRecord max_spectral_parallel(EnumerationSpec spec, int threads,
                                   double tol = default_rho_tol);

/// Exhaustive check of rho(G) <= rho(K_{p,q}^{{e}}) on K(p,q,e). Throws
/// DomainError unless 0 < pq-e < min(p,q).
SearchRecord verify_conjecture2(int p, int q, int e,
                                double tol = default_rho_tol, int threads = 1);

/// Looks for (s,t), s <= p, t <= q, 0 <= st-e <= min(s,t), with
/// rho(K_{s,t}^{{e}}) >= max rho over K(p,q,e). Pairs are tried by
/// decreasing st; the first hit wins unless list_all is set.
ConjectureVerdict scan_conjecture3(int p, int q, int e,
                                   double tol = default_rho_tol,
                                   bool list_all = false, int threads = 1);

/// rho(K_{s,t}^{{e}}), with st == e read as the complete graph K_{s,t}.
double rho_brace_or_complete(int s, int t, int e);

/// Same scan against an already computed max_spectral record.
ConjectureVerdict scan_conjecture3(SearchRecord const &rec, bool list_all = false);

/// Random e-edge subsets of K_{p,q}; verdict is always `sampled`.
SearchRecord sample_max_spectral(int p, int q, int e, long samples,
                                 std::uint64_t seed,
                                 double tol = default_rho_tol);

} // namespace bispec

#endif // BISPEC_SEARCH_HPP
