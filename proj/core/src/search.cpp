#include "bispec/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "bispec/bounds.hpp"
#include "bispec/errors.hpp"

namespace bispec {

namespace {

// Orbit arithmetic needs up to 25!, past 64 bits.
__extension__ typedef unsigned __int128 u128;

std::uint64_t fnv1a(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Words of `bits` bits ordered by popcount, then value, both descending.
std::vector<std::uint64_t> ordered_words(int bits)
{
  std::vector<std::uint64_t> words(std::size_t{1} << bits);
  std::iota(words.begin(), words.end(), std::uint64_t{0});
  std::sort(words.begin(), words.end(), [](auto a, auto b) {
    auto const pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a > b;
  });
  return words;
}

} // namespace

void EnumerationSpec::validate() const
{
  if (p < 1 || q < 1)
    throw DomainError("EnumerationSpec: p and q must be >= 1");
  if (e < 0 || e > p * q)
    throw DomainError("EnumerationSpec: need 0 <= e <= pq");
  if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count)
    throw DomainError("EnumerationSpec: need 0 <= shard index < shard count");
}

std::string_view to_string(Verdict v)
{
  switch (v) {
  case Verdict::confirmed: return "confirmed";
  case Verdict::refuted: return "refuted";
  case Verdict::inapplicable: return "inapplicable";
  case Verdict::sampled: return "sampled";
  }
  return "inapplicable";
}

Verdict verdict_from_string(std::string_view s)
{
  for (auto v : {Verdict::confirmed, Verdict::refuted, Verdict::inapplicable,
                 Verdict::sampled})
    if (to_string(v) == s)
      return v;
  throw InputValueError("unknown verdict '" + std::string(s) + "'");
}

bool conjecture2_applies(int p, int q, int e)
{
  auto const missing = p * q - e;
  return missing > 0 && missing < std::min(p, q);
}

std::string class_key(BipartiteGraph const &g, bool dedupe_transpose)
{
  auto key = canonical_form(g);
  if (dedupe_transpose && g.p() == g.q())
    key = std::min(key, canonical_form(g.transposed()));
  return key;
}

void for_each_class(EnumerationSpec const &spec,
                    std::function<void(BipartiteGraph const &)> const &visit)
{
  spec.validate();
  if (spec.p * spec.q > exhaustive_cap)
    throw ScaleError("enumerate: p*q = " + std::to_string(spec.p * spec.q) +
                     " exceeds the exhaustive cap of " +
                     std::to_string(exhaustive_cap) +
                     "; use the sampled mode instead");

  // Rows run over the larger part so row words stay short.
  auto const transpose = spec.p < spec.q;
  auto const nrows = std::max(spec.p, spec.q);
  auto const width = std::min(spec.p, spec.q);
  auto const words = ordered_words(width);

  std::unordered_set<std::string> seen;
  std::vector<std::uint64_t> rows(nrows);

  // Rows are non-increasing in (popcount, value); every class has such a
  // labeling, and canonical dedupe removes the remaining repeats.
  auto emit = [&] {
    BipartiteGraph m(nrows, width, rows);
    auto const g = transpose ? m.transposed() : m;
    auto key = class_key(g, spec.dedupe_transpose);
    if (spec.shard.count > 1 &&
        fnv1a(key) % static_cast<std::uint64_t>(spec.shard.count) !=
            static_cast<std::uint64_t>(spec.shard.index))
      return;
    if (!seen.insert(key).second)
      return;
    visit(graph_from_matrix_string(key));
  };

  std::function<void(int, std::size_t, int)> place = [&](int row,
                                                         std::size_t start,
                                                         int remaining) {
    if (row == nrows) {
      if (remaining == 0)
        emit();
      return;
    }
    auto const rows_left = nrows - row;
    for (std::size_t k = start; k < words.size(); ++k) {
      auto const pop = std::popcount(words[k]);
      if (pop > remaining)
        continue;
      // Later rows have popcount <= pop.
      if (static_cast<long>(pop) * rows_left < remaining)
        break;
      rows[row] = words[k];
      place(row + 1, k, remaining - pop);
    }
  };
  place(0, 0, spec.e);
}

std::vector<BipartiteGraph> enumerate_kpqe(EnumerationSpec const &spec)
{
  std::vector<BipartiteGraph> out;
  for_each_class(spec, [&](BipartiteGraph const &g) { out.push_back(g); });
  return out;
}

std::uint64_t labeled_orbit_size(BipartiteGraph const &g)
{
  if (std::min(g.p(), g.q()) > 8 || std::max(g.p(), g.q()) > 25)
    throw ScaleError("labeled_orbit_size: needs min(p,q) <= 8, max(p,q) <= 25");
  auto const m = g.p() <= g.q() ? g : g.transposed();
  auto const n = m.p();
  auto const cols = m.q();

  auto column_multiset = [&](std::vector<int> const &perm) {
    std::vector<std::uint32_t> w(cols);
    for (int j = 0; j < cols; ++j) {
      std::uint32_t word = 0;
      for (int i = 0; i < n; ++i)
        word |= static_cast<std::uint32_t>(m.has_edge(perm[i], j)) << i;
      w[j] = word;
    }
    std::sort(w.begin(), w.end());
    return w;
  };

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto const base = column_multiset(perm);

  // Column permutations fixing a given column arrangement.
  u128 col_stabilizer = 1;
  for (std::size_t j = 0; j < base.size();) {
    std::size_t k = j;
    while (k < base.size() && base[k] == base[j])
      ++k;
    for (std::size_t f = 2; f <= k - j; ++f)
      col_stabilizer *= f;
    j = k;
  }

  u128 automorphisms = 0;
  do {
    if (column_multiset(perm) == base)
      automorphisms += col_stabilizer;
  } while (std::next_permutation(perm.begin(), perm.end()));

  u128 group = 1;
  for (int f = 2; f <= g.p(); ++f)
    group *= static_cast<unsigned>(f);
  for (int f = 2; f <= g.q(); ++f)
    group *= static_cast<unsigned>(f);
  return static_cast<std::uint64_t>(group / automorphisms);
}

double rho_brace_or_complete(int s, int t, int e)
{
  if (s * t == e)
    return std::sqrt(static_cast<double>(e));
  return rho_k_brace_closed(s, t, e);
}

namespace {

void finalize(SearchRecord &rec)
{
  auto const &spec = rec.spec;
  auto by_form = [](Maximizer const &a, Maximizer const &b) {
    return a.form < b.form;
  };
  std::sort(rec.maximizers.begin(), rec.maximizers.end(), by_form);
  rec.maximizers.erase(
      std::unique(rec.maximizers.begin(), rec.maximizers.end(),
                  [](auto const &a, auto const &b) { return a.form == b.form; }),
      rec.maximizers.end());
  if (!conjecture2_applies(spec.p, spec.q, spec.e)) {
    rec.extremal_value.reset();
    if (rec.verdict != Verdict::sampled)
      rec.verdict = Verdict::inapplicable;
    return;
  }
  auto const extremal = rho_k_brace_closed(spec.p, spec.q, spec.e);
  rec.extremal_value = extremal;
  if (rec.verdict == Verdict::sampled)
    return;
  auto const key = class_key(k_brace(spec.p, spec.q, spec.e), spec.dedupe_transpose);
  auto const value_ok = std::abs(rec.max_rho - extremal) <= rho_slack(extremal);
  auto const graph_ok = std::any_of(rec.maximizers.begin(), rec.maximizers.end(),
                                    [&](auto const &m) { return m.form == key; });
  rec.verdict = value_ok && graph_ok ? Verdict::confirmed : Verdict::refuted;
}

// Keeps the candidates within the tie slack of the running maximum.
class MaxTracker {
public:
  void offer(double rho, std::string const &key)
  {
    if (!any_ || rho > max_) {
      any_ = true;
      max_ = rho;
      prune();
    }
    if (rho >= max_ - rho_slack(max_))
      ties_.emplace_back(rho, key);
  }

  double max() const { return max_; }

  std::vector<Maximizer> keys() const
  {
    std::vector<Maximizer> out;
    for (auto const &[rho, key] : ties_)
      if (rho >= max_ - rho_slack(max_))
        out.push_back({key, rho});
    return out;
  }

private:
  void prune()
  {
    std::erase_if(ties_, [&](auto const &c) { return c.first < max_ - rho_slack(max_); });
  }

  bool any_ = false;
  double max_ = 0;
  std::vector<std::pair<double, std::string>> ties_;
};

} // namespace

SearchRecord max_spectral(EnumerationSpec const &spec, double tol)
{
  SearchRecord rec;
  rec.spec = spec;
  MaxTracker tracker;
  for_each_class(spec, [&](BipartiteGraph const &g) {
    ++rec.class_count;
    tracker.offer(spectral_radius(g, tol), matrix_string(g));
  });
  rec.max_rho = tracker.max();
  rec.maximizers = tracker.keys();
  finalize(rec);
  return rec;
}

SearchRecord merge_records(std::vector<SearchRecord> const &parts)
{
  if (parts.empty())
    throw DomainError("merge_records: nothing to merge");
  SearchRecord rec;
  rec.spec = parts.front().spec;
  rec.spec.shard = Shard{};
  rec.verdict = parts.front().verdict == Verdict::sampled ? Verdict::sampled
                                                          : Verdict::inapplicable;
  MaxTracker tracker;
  for (auto const &part : parts) {
    if (part.spec.p != rec.spec.p || part.spec.q != rec.spec.q ||
        part.spec.e != rec.spec.e ||
        part.spec.dedupe_transpose != rec.spec.dedupe_transpose)
      throw DomainError("merge_records: records belong to different cells");
    rec.class_count += part.class_count;
    // A global maximizer is within the slack of its own shard max too.
    for (auto const &m : part.maximizers)
      tracker.offer(m.rho, m.form);
  }
  rec.max_rho = tracker.max();
  rec.maximizers = tracker.keys();
  finalize(rec);
  return rec;
}

SearchRecord max_spectral_parallel(EnumerationSpec spec, int threads, double tol)
{
  if (threads <= 1) {
    spec.shard = Shard{};
    return max_spectral(spec, tol);
  }
  std::vector<std::future<SearchRecord>> jobs;
  for (int k = 0; k < threads; ++k) {
    auto shard_spec = spec;
    shard_spec.shard = Shard{k, threads};
    jobs.push_back(std::async(std::launch::async, [shard_spec, tol] {
      return max_spectral(shard_spec, tol);
    }));
  }
  std::vector<SearchRecord> parts;
  for (auto &job : jobs)
    parts.push_back(job.get());
  return merge_records(parts);
}

SearchRecord verify_conjecture2(int p, int q, int e, double tol, int threads)
{
  if (!conjecture2_applies(p, q, e))
    throw DomainError("verify_conjecture2: need 0 < pq-e < min(p,q), got p=" +
                      std::to_string(p) + " q=" + std::to_string(q) +
                      " e=" + std::to_string(e));
  return max_spectral_parallel(EnumerationSpec{p, q, e, false, {}}, threads, tol);
}

ConjectureVerdict scan_conjecture3(int p, int q, int e, double tol,
                                   bool list_all, int threads)
{
  return scan_conjecture3(
      max_spectral_parallel(EnumerationSpec{p, q, e, false, {}}, threads, tol),
      list_all);
}

ConjectureVerdict scan_conjecture3(SearchRecord const &rec, bool list_all)
{
  auto const p = rec.spec.p, q = rec.spec.q, e = rec.spec.e;
  ConjectureVerdict out;
  out.spec = rec.spec;
  out.class_count = rec.class_count;
  out.max_rho = rec.max_rho;

  std::vector<std::pair<int, int>> pairs;
  for (int s = 1; s <= p; ++s)
    for (int t = 1; t <= q; ++t) {
      auto const gap = s * t - e;
      if (gap >= 0 && gap <= std::min(s, t))
        pairs.emplace_back(s, t);
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](auto a, auto b) {
    return a.first * a.second > b.first * b.second;
  });

  for (auto [s, t] : pairs) {
    auto const rho = rho_brace_or_complete(s, t, e);
    if (rho < rec.max_rho - rho_slack(rec.max_rho))
      continue;
    if (!out.found) {
      out.found = true;
      out.best_st = std::pair{s, t};
      out.witness_rho = rho;
      if (!list_all)
        break;
    }
    out.witnesses.emplace_back(s, t);
  }
  return out;
}

SearchRecord sample_max_spectral(int p, int q, int e, long samples,
                                 std::uint64_t seed, double tol)
{
  EnumerationSpec spec{p, q, e, false, {}};
  spec.validate();
  if (p > BipartiteGraph::max_part || q > BipartiteGraph::max_part)
    throw ScaleError("sample_max_spectral: part orders are capped at 64");
  if (samples < 1)
    throw DomainError("sample_max_spectral: need at least one sample");

  auto const canonical_ok = std::min(p, q) <= 8;
  std::mt19937_64 rng(seed);
  std::vector<int> cells(static_cast<std::size_t>(p) * q);
  std::iota(cells.begin(), cells.end(), 0);
  std::vector<int> chosen(e);

  SearchRecord rec;
  rec.spec = spec;
  rec.verdict = Verdict::sampled;
  std::unordered_set<std::string> classes;
  MaxTracker tracker;
  for (long k = 0; k < samples; ++k) {
    std::sample(cells.begin(), cells.end(), chosen.begin(), e, rng);
    std::vector<std::uint64_t> rows(p, 0);
    for (auto c : chosen)
      rows[c / q] |= std::uint64_t{1} << (c % q);
    BipartiteGraph g(p, q, std::move(rows));
    auto key = canonical_ok ? canonical_form(g) : matrix_string(g);
    classes.insert(key);
    tracker.offer(spectral_radius(g, tol), key);
  }
  rec.class_count = static_cast<long long>(classes.size());
  rec.max_rho = tracker.max();
  rec.maximizers = tracker.keys();
  finalize(rec);
  return rec;
}

} // namespace bispec
