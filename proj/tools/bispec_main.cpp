// bispec: spectral radii, phi_{s,t} bounds, extremal constructions and
// exhaustive K(p,q,e) searches from the command line.
//
// Exit codes: 0 success, 2 input error, 3 internal theorem/certificate
// violation (or a refuted verdict), 4 scale cap.

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bispec/bounds.hpp"
#include "bispec/errors.hpp"
#include "bispec/graph.hpp"
#include "bispec/graph_io.hpp"
#include "bispec/result_log.hpp"
#include "bispec/search.hpp"
#include "bispec/spectral.hpp"

namespace {

using namespace bispec;
using nlohmann::json;

enum class Format { text, json };

struct RunConfig {
  double tol = default_rho_tol;
  int threads = 1;
  std::string log_path;
  Format format = Format::text;
  int precision = 9;
  bool force = false;
  bool dedupe_transpose = false;
};

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_internal = 3;
constexpr int exit_scale = 4;

class Printer {
public:
  explicit Printer(int precision) : precision_(precision) {}

  std::string num(double v) const
  {
    std::ostringstream s;
    s << std::setprecision(precision_) << v;
    return s.str();
  }

private:
  int precision_;
};

std::string join(std::vector<int> const &v)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

void maybe_log(RunConfig const &cfg, LogEntry const &entry)
{
  if (!cfg.log_path.empty())
    append_log(cfg.log_path, entry);
}

// "-" reads standard input.
BipartiteGraph load_graph(std::string const &file)
{
  return file == "-" ? read_graph(std::cin) : read_graph_file(file);
}

int cmd_rho(RunConfig const &cfg, std::string const &file)
{
  auto const g = load_graph(file);
  auto const rho = spectral_radius(g, cfg.tol);
  auto const profile = degree_profile(g);
  auto const connected = is_connected(g);
  auto const biregular = is_biregular(g);
  Printer out(cfg.precision);

  if (cfg.format == Format::json) {
    json j{{"rho", rho},           {"p", g.p()},
           {"q", g.q()},           {"e", g.edges()},
           {"d", profile.d},       {"dprime", profile.dprime},
           {"connected", connected}, {"biregular", biregular}};
    std::cout << j.dump() << '\n';
    return exit_ok;
  }
  std::cout << "rho " << out.num(rho) << '\n'
            << "p " << g.p() << " q " << g.q() << " e " << g.edges() << '\n'
            << "d " << join(profile.d) << '\n'
            << "dprime " << join(profile.dprime) << '\n'
            << "connected " << (connected ? "yes" : "no") << '\n'
            << "biregular " << (biregular ? "yes" : "no") << '\n';
  return exit_ok;
}

int cmd_bounds(RunConfig const &cfg, std::string const &file, bool grid_mode,
               std::vector<int> const &certify)
{
  auto const g = load_graph(file);
  Printer out(cfg.precision);

  if (!certify.empty()) {
    auto const rep = scaling_certificate(g, certify[0], certify[1]);
    if (cfg.format == Format::json) {
      json j{{"s", rep.s},         {"t", rep.t},
             {"phi_sq", rep.phi_sq}, {"x", rep.x},
             {"xprime", rep.xprime}, {"row_sums", rep.row_sums},
             {"max_row_sum", rep.max_row_sum},
             {"verdict", rep.verdict}};
      std::cout << j.dump() << '\n';
      return exit_ok;
    }
    std::cout << "certify (" << rep.s << "," << rep.t << ")\n"
              << "phi_sq " << out.num(rep.phi_sq) << '\n';
    std::cout << "x";
    for (auto w : rep.x)
      std::cout << ' ' << out.num(w);
    std::cout << "\nxprime";
    for (auto w : rep.xprime)
      std::cout << ' ' << out.num(w);
    std::cout << "\nrow_sums";
    for (auto r : rep.row_sums)
      std::cout << ' ' << out.num(r);
    std::cout << "\nmax_row_sum " << out.num(rep.max_row_sum) << '\n'
              << "verdict " << (rep.verdict ? "true" : "false") << '\n';
    return exit_ok;
  }

  auto const grid = phi_grid(g, cfg.tol);
  if (cfg.format == Format::json) {
    json values = json::array();
    for (int s = 1; s <= g.p(); ++s) {
      json row = json::array();
      for (int t = 1; t <= g.q(); ++t)
        row.push_back(grid.at(s, t));
      values.push_back(row);
    }
    json tight = json::array();
    for (auto [s, t] : grid.tight_cells)
      tight.push_back({s, t});
    json j{{"rho", grid.rho},
           {"best", {grid.best_s, grid.best_t}},
           {"best_value", grid.best_value},
           {"tight_cells", tight}};
    if (grid_mode)
      j["values"] = values;
    std::cout << j.dump() << '\n';
    return exit_ok;
  }

  if (grid_mode) {
    std::cout << "rho " << out.num(grid.rho) << '\n';
    for (int s = 1; s <= g.p(); ++s) {
      for (int t = 1; t <= g.q(); ++t) {
        std::cout << (t > 1 ? " " : "") << out.num(grid.at(s, t))
                  << (grid.is_tight(s, t) ? "*" : "");
      }
      std::cout << '\n';
    }
    return exit_ok;
  }
  std::cout << "(" << grid.best_s << "," << grid.best_t << ") "
            << out.num(grid.best_value)
            << (grid.is_tight(grid.best_s, grid.best_t) ? " TIGHT" : "") << '\n';
  return exit_ok;
}

int cmd_construct(std::string const &kind, std::vector<int> const &args)
{
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw DomainError("construct " + kind + " takes " + std::to_string(n) +
                        " integers");
  };
  std::optional<BipartiteGraph> g;
  if (kind == "brace") {
    need(3);
    g = k_brace(args[0], args[1], args[2]);
  } else if (kind == "bracket") {
    need(3);
    g = k_bracket(args[0], args[1], args[2]);
  } else if (kind == "complete") {
    need(2);
    g = complete_bipartite(args[0], args[1]);
  } else if (kind == "empty") {
    need(2);
    g = empty_bipartite(args[0], args[1]);
  } else {
    throw DomainError("unknown construction '" + kind + "'");
  }
  write_graph(std::cout, *g);
  return exit_ok;
}

SearchRecord run_cell(RunConfig const &cfg, int p, int q, int e)
{
  return max_spectral_parallel(EnumerationSpec{p, q, e, cfg.dedupe_transpose, {}},
                               cfg.threads, cfg.tol);
}

bool report_cell(RunConfig const &cfg, SearchRecord const &rec, bool prefix)
{
  Printer out(cfg.precision);
  maybe_log(cfg, LogEntry{"verify", rec, std::nullopt});
  if (cfg.format == Format::json) {
    std::cout << to_json_line(LogEntry{"verify", rec, std::nullopt}) << '\n';
  } else {
    if (prefix)
      std::cout << rec.spec.p << ' ' << rec.spec.q << ' ' << rec.spec.e << ' ';
    std::cout << to_string(rec.verdict) << ' ' << out.num(rec.max_rho) << '\n';
  }
  if (rec.verdict == Verdict::refuted) {
    std::cerr << "REFUTED: max rho over K(" << rec.spec.p << "," << rec.spec.q
              << "," << rec.spec.e << ") = " << std::setprecision(17)
              << rec.max_rho << " against closed form "
              << rec.extremal_value.value_or(NAN)
              << "; this contradicts a proved result and indicates a bug\n";
    return false;
  }
  return true;
}

int cmd_verify(RunConfig const &cfg, std::vector<int> const &cell,
               std::vector<int> const &sweep)
{
  if (!sweep.empty()) {
    auto const pmax = sweep[0], qmax = sweep[1];
    if (pmax < 1 || qmax < 1)
      throw DomainError("verify --sweep: bounds must be >= 1");
    if (pmax * qmax > exhaustive_cap)
      throw ScaleError("verify --sweep " + std::to_string(pmax) + " " +
                       std::to_string(qmax) + ": cells beyond p*q = " +
                       std::to_string(exhaustive_cap) + " are not exhaustible");
    std::set<CellKey> done;
    if (!cfg.log_path.empty() && !cfg.force)
      done = completed_cells(cfg.log_path);
    bool ok = true;
    for (int p = 1; p <= pmax; ++p)
      for (int q = 1; q <= qmax; ++q)
        for (int e = 0; e <= p * q; ++e) {
          if (!conjecture2_applies(p, q, e))
            continue;
          if (done.count({"verify", p, q, e})) {
            if (cfg.format == Format::text)
              std::cout << p << ' ' << q << ' ' << e << " skipped (logged)\n";
            continue;
          }
          ok &= report_cell(cfg, run_cell(cfg, p, q, e), true);
        }
    return ok ? exit_ok : exit_internal;
  }

  if (cell.size() != 3)
    throw DomainError("verify takes P Q E or --sweep PMAX QMAX");
  auto const p = cell[0], q = cell[1], e = cell[2];
  if (p < 1 || q < 1 || e < 0 || e > p * q)
    throw DomainError("verify: need p,q >= 1 and 0 <= e <= pq");
  if (!conjecture2_applies(p, q, e)) {
    std::cout << "inapplicable\n";
    return exit_ok;
  }
  return report_cell(cfg, run_cell(cfg, p, q, e), false)
             ? exit_ok
             : exit_internal;
}

int cmd_scan3(RunConfig const &cfg, std::vector<int> const &cell, bool list_all)
{
  auto const p = cell[0], q = cell[1], e = cell[2];
  auto const rec = run_cell(cfg, p, q, e);
  auto const verdict = scan_conjecture3(rec, list_all);
  maybe_log(cfg, LogEntry{"scan3", rec, verdict.best_st});

  Printer out(cfg.precision);
  if (cfg.format == Format::json) {
    json j{{"p", p}, {"q", q}, {"e", e}, {"found", verdict.found},
           {"max_rho", verdict.max_rho}, {"classes", verdict.class_count}};
    j["witness"] = verdict.best_st
        ? json::array({verdict.best_st->first, verdict.best_st->second})
        : json(nullptr);
    if (list_all) {
      json all = json::array();
      for (auto [s, t] : verdict.witnesses)
        all.push_back({s, t});
      j["witnesses"] = all;
    }
    std::cout << j.dump() << '\n';
    return exit_ok;
  }
  if (verdict.found) {
    std::cout << "found (" << verdict.best_st->first << ","
              << verdict.best_st->second << ") rho " << out.num(verdict.witness_rho)
              << " max_rho " << out.num(verdict.max_rho) << '\n';
    if (list_all)
      for (auto [s, t] : verdict.witnesses)
        std::cout << "  (" << s << "," << t << ") "
                  << out.num(rho_brace_or_complete(s, t, e)) << '\n';
  } else {
    std::cout << "CANDIDATE-COUNTEREXAMPLE max_rho " << out.num(verdict.max_rho)
              << " (no admissible (s,t) reaches it; needs human review)\n";
  }
  return exit_ok;
}

int cmd_sample(RunConfig const &cfg, std::vector<int> const &cell, long samples,
               std::uint64_t seed)
{
  auto const rec = sample_max_spectral(cell[0], cell[1], cell[2], samples, seed,
                                       cfg.tol);
  maybe_log(cfg, LogEntry{"sample", rec, std::nullopt});
  Printer out(cfg.precision);
  if (cfg.format == Format::json) {
    std::cout << to_json_line(LogEntry{"sample", rec, std::nullopt}) << '\n';
    return exit_ok;
  }
  std::cout << "sampled " << out.num(rec.max_rho);
  if (rec.extremal_value)
    std::cout << " closed_form " << out.num(*rec.extremal_value);
  std::cout << " classes_seen " << rec.class_count << '\n';
  return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spectral radius tools for bipartite graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "text";
  app.add_option("--tol", cfg.tol, "Absolute tolerance on rho")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker shards for searches")
      ->check(CLI::Range(1, 1024));
  app.add_option("--log", cfg.log_path, "Append JSONL results to this file");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--precision", cfg.precision, "Significant digits printed")
      ->check(CLI::Range(1, 17));
  app.add_flag("--force", cfg.force, "Re-run cells already in the log");
  app.add_flag("--dedupe-transpose", cfg.dedupe_transpose,
               "Identify G with its part swap when p == q");

  std::string file;
  auto *rho = app.add_subcommand("rho", "Spectral radius and degree data of a graph file");
  rho->add_option("file", file, "Graph file, or - for stdin")->required();

  auto *bounds = app.add_subcommand("bounds", "phi_{s,t} bounds of a graph file");
  bounds->add_option("file", file, "Graph file, or - for stdin")->required();
  bool grid_mode = false, best_mode = false;
  std::vector<int> certify;
  auto *grid_flag = bounds->add_flag("--grid", grid_mode, "Full phi table, tight cells starred");
  auto *best_flag = bounds->add_flag("--best", best_mode, "Minimizing cell (default)");
  auto *cert_opt = bounds->add_option("--certify", certify, "Scaling certificate for cell S T")
                       ->expected(2);
  grid_flag->excludes(best_flag)->excludes(cert_opt);
  best_flag->excludes(cert_opt);

  auto *construct = app.add_subcommand("construct", "Emit a named graph in matrix format");
  std::string kind;
  std::vector<int> construct_args;
  construct->add_option("kind", kind, "brace | bracket | complete | empty")
      ->required()
      ->check(CLI::IsMember({"brace", "bracket", "complete", "empty"}));
  construct->add_option("args", construct_args, "P Q [E]")->required();

  auto *verify = app.add_subcommand("verify", "Exhaustive check of rho(G) <= rho(K_{p,q}^{{e}})");
  std::vector<int> cell, sweep;
  auto *cell_opt = verify->add_option("cell", cell, "P Q E")->expected(3);
  auto *sweep_opt = verify->add_option("--sweep", sweep, "All eligible cells up to PMAX QMAX")
                        ->expected(2);
  cell_opt->excludes(sweep_opt);

  auto *scan3 = app.add_subcommand("scan3", "Search an admissible (s,t) dominating K(p,q,e)");
  std::vector<int> scan_cell;
  bool list_all = false;
  scan3->add_option("cell", scan_cell, "P Q E")->expected(3)->required();
  scan3->add_flag("--all", list_all, "List every admissible witness");

  auto *sample = app.add_subcommand("sample", "Randomized max-rho estimate beyond the exhaustive cap");
  std::vector<int> sample_cell;
  long samples = 10000;
  std::uint64_t seed = 1;
  sample->add_option("cell", sample_cell, "P Q E")->expected(3)->required();
  sample->add_option("--samples", samples, "Number of random graphs");
  sample->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    auto const rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }
  cfg.format = format == "json" ? Format::json : Format::text;

  try {
    if (*rho)
      return cmd_rho(cfg, file);
    if (*bounds)
      return cmd_bounds(cfg, file, grid_mode, certify);
    if (*construct)
      return cmd_construct(kind, construct_args);
    if (*verify) {
      if (cell.empty() && sweep.empty())
        throw DomainError("verify takes P Q E or --sweep PMAX QMAX");
      return cmd_verify(cfg, cell, sweep);
    }
    if (*scan3)
      return cmd_scan3(cfg, scan_cell, list_all);
    if (*sample)
      return cmd_sample(cfg, sample_cell, samples, seed);
  } catch (ScaleError const &e) {
    std::cerr << "scale cap: " << e.what() << '\n';
    return exit_scale;
  } catch (CertificateViolation const &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  } catch (TheoremViolation const &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  } catch (ConvergenceError const &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  } catch (Error const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_ok;
}
