#ifndef BISPEC_RESULT_LOG_HPP
#define BISPEC_RESULT_LOG_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bispec/search.hpp"

namespace bispec {

// Append-only JSONL result log, one object per (p,q,e) run:
//
//   {"p":3,"q":3,"e":7,"classes":..,"max_rho":..,"extremal_rho":..|null,
//    "verdict":"confirmed|refuted|inapplicable|sampled",
//    "maximizers":["3x3:111,111,100", ...],
//    "kind":"verify|scan3|sample", "witness":[s,t]|null}
//
// "witness" is only written for scan3 entries.
struct LogEntry {
  std::string kind = "verify";
  SearchRecord record;
  std::optional<std::pair<int, int>> witness;
};

std::string to_json_line(LogEntry const &entry);

/// Throws ParseError (column 1, the given line number) on malformed input.
LogEntry parse_log_line(std::string const &line, std::size_t line_number = 1);

/// Appends one line and flushes.
void append_log(std::filesystem::path const &path, LogEntry const &entry);

/// Every entry in the file; a missing file reads as empty.
std::vector<LogEntry> read_log(std::filesystem::path const &path);

using CellKey = std::tuple<std::string, int, int, int>; // kind, p, q, e

std::set<CellKey> completed_cells(std::filesystem::path const &path);

} // namespace bispec

#endif // BISPEC_RESULT_LOG_HPP
