#include "bispec/result_log.hpp"

#include <fstream>

#include <json.hpp>

#include "bispec/errors.hpp"

namespace bispec {

using nlohmann::json;

std::string to_json_line(LogEntry const &entry)
{
  auto const &rec = entry.record;
  json j;
  j["p"] = rec.spec.p;
  j["q"] = rec.spec.q;
  j["e"] = rec.spec.e;
  j["classes"] = rec.class_count;
  j["max_rho"] = rec.max_rho;
  j["extremal_rho"] = rec.extremal_value ? json(*rec.extremal_value) : json(nullptr);
  j["verdict"] = std::string(to_string(rec.verdict));
  auto forms = json::array();
  for (auto const &m : rec.maximizers)
    forms.push_back(m.form);
  j["maximizers"] = std::move(forms);
  j["kind"] = entry.kind;
  if (entry.kind == "scan3")
    j["witness"] = entry.witness
        ? json::array({entry.witness->first, entry.witness->second})
        : json(nullptr);
  return j.dump();
}

LogEntry parse_log_line(std::string const &line, std::size_t line_number)
{
  try {
    auto const j = json::parse(line);
    LogEntry entry;
    auto &rec = entry.record;
    rec.spec.p = j.at("p").get<int>();
    rec.spec.q = j.at("q").get<int>();
    rec.spec.e = j.at("e").get<int>();
    rec.class_count = j.at("classes").get<long long>();
    rec.max_rho = j.at("max_rho").get<double>();
    if (!j.at("extremal_rho").is_null())
      rec.extremal_value = j.at("extremal_rho").get<double>();
    rec.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    // Per-maximizer radii are not logged; they all tie with max_rho.
    for (auto const &form : j.at("maximizers"))
      rec.maximizers.push_back({form.get<std::string>(), rec.max_rho});
    entry.kind = j.value("kind", std::string("verify"));
    if (j.contains("witness") && !j.at("witness").is_null())
      entry.witness = std::pair{j.at("witness").at(0).get<int>(),
                                j.at("witness").at(1).get<int>()};
    return entry;
  } catch (json::exception const &ex) {
    throw ParseError(std::string("bad log record: ") + ex.what(), line_number, 1);
  } catch (InputValueError const &ex) {
    throw ParseError(ex.what(), line_number, 1);
  }
}

void append_log(std::filesystem::path const &path, LogEntry const &entry)
{
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw InputError("cannot open log '" + path.string() + "' for appending");
  out << to_json_line(entry) << '\n';
  out.flush();
}

std::vector<LogEntry> read_log(std::filesystem::path const &path)
{
  std::vector<LogEntry> entries;
  std::ifstream in(path);
  if (!in)
    return entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    entries.push_back(parse_log_line(line, number));
  }
  return entries;
}

std::set<CellKey> completed_cells(std::filesystem::path const &path)
{
  std::set<CellKey> done;
  for (auto const &entry : read_log(path))
    done.emplace(entry.kind, entry.record.spec.p, entry.record.spec.q,
                 entry.record.spec.e);
  return done;
}

} // namespace bispec
