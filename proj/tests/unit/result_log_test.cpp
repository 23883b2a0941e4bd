#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "bispec/errors.hpp"
#include "bispec/result_log.hpp"

using namespace bispec;

namespace {

std::filesystem::path scratch(char const *name)
{
  auto const path = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(path);
  return path;
}

} // namespace

TEST(ResultLog, LineHasStableKeys)
{
  LogEntry entry;
  entry.record = max_spectral({3, 3, 7});
  auto const line = to_json_line(entry);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto const j = nlohmann::json::parse(line);
  for (auto key : {"p", "q", "e", "classes", "max_rho", "extremal_rho", "verdict",
                   "maximizers", "kind"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "confirmed");
  EXPECT_EQ(j["maximizers"].size(), 2u); // brace and its transpose
  EXPECT_FALSE(j.contains("witness"));
}

TEST(ResultLog, RoundTrip)
{
  LogEntry entry;
  entry.kind = "scan3";
  entry.record = max_spectral({2, 2, 4});
  entry.witness = std::pair{2, 2};
  auto const back = parse_log_line(to_json_line(entry));
  EXPECT_EQ(back.kind, "scan3");
  EXPECT_EQ(back.witness, entry.witness);
  EXPECT_EQ(back.record.spec.p, 2);
  EXPECT_EQ(back.record.spec.e, 4);
  EXPECT_EQ(back.record.class_count, entry.record.class_count);
  EXPECT_EQ(back.record.max_rho, entry.record.max_rho);
  EXPECT_EQ(back.record.maximizers.size(), entry.record.maximizers.size());
  EXPECT_FALSE(back.record.extremal_value.has_value());
  EXPECT_EQ(back.record.verdict, Verdict::inapplicable);
}

TEST(ResultLog, MalformedLines)
{
  EXPECT_THROW(parse_log_line("not json", 4), ParseError);
  EXPECT_THROW(parse_log_line(R"({"p":1})", 2), ParseError);
  try {
    parse_log_line("{", 9);
  } catch (ParseError const &err) {
    EXPECT_EQ(err.line(), 9u);
  }
}

TEST(ResultLog, AppendOnlyAndCompletedCells)
{
  auto const path = scratch("bispec_log_test.jsonl");
  EXPECT_TRUE(read_log(path).empty());

  LogEntry a;
  a.record = max_spectral({2, 3, 5});
  append_log(path, a);
  append_log(path, a);
  LogEntry b;
  b.kind = "scan3";
  b.record = max_spectral({1, 1, 1});
  b.witness = std::pair{1, 1};
  append_log(path, b);

  auto const entries = read_log(path);
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[2].kind, "scan3");

  auto const done = completed_cells(path);
  EXPECT_EQ(done.size(), 2u);
  EXPECT_TRUE(done.count({"verify", 2, 3, 5}));
  EXPECT_TRUE(done.count({"scan3", 1, 1, 1}));
  EXPECT_FALSE(done.count({"verify", 1, 1, 1}));
  std::filesystem::remove(path);
}
