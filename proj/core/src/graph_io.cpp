#include "bispec/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bispec/errors.hpp"

namespace bispec {

namespace {

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

std::vector<Token> split(std::string const &line)
{
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    if (i >= line.size())
      break;
    auto const start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

int to_int(Token const &tok, std::size_t line)
{
  int value = 0;
  auto const *first = tok.text.data();
  auto const *last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError("expected an integer, got '" + tok.text + "'", line,
                     tok.column);
  return value;
}

class LineReader {
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::vector<Token> &tokens)
  {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      tokens = split(line);
      if (!tokens.empty() && tokens.front().text[0] != '#')
        return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

private:
  std::istream &in_;
  std::size_t number_ = 0;
};

} // namespace

BipartiteGraph read_graph(std::istream &in)
{
  LineReader reader(in);
  std::vector<Token> tokens;
  if (!reader.next(tokens))
    throw ParseError("empty input", reader.number() + 1, 1);

  auto const header_line = reader.number();
  if (tokens.size() != 2 && tokens.size() != 3)
    throw ParseError("header must be 'p q' or 'p q e'", header_line, 1);
  auto const p = to_int(tokens[0], header_line);
  auto const q = to_int(tokens[1], header_line);
  if (p < 1 || q < 1)
    throw ParseError("part orders must be >= 1", header_line, tokens[0].column);
  if (p > BipartiteGraph::max_part || q > BipartiteGraph::max_part)
    throw ParseError("part orders are capped at 64", header_line,
                     tokens[0].column);

  std::vector<std::uint64_t> rows(p, 0);

  if (tokens.size() == 2) {
    for (int i = 0; i < p; ++i) {
      if (!reader.next(tokens))
        throw ParseError("expected " + std::to_string(p) + " matrix rows, got " +
                             std::to_string(i),
                         reader.number() + 1, 1);
      // Rows may be written "0110" or "0 1 1 0".
      std::string cells;
      for (auto const &t : tokens)
        cells += t.text;
      auto const line = reader.number();
      auto const first_col = tokens.front().column;
      if (static_cast<int>(cells.size()) != q)
        throw ParseError("row has " + std::to_string(cells.size()) +
                             " entries, expected " + std::to_string(q),
                         line, first_col);
      std::size_t pos = 0;
      for (auto const &t : tokens) {
        for (std::size_t k = 0; k < t.text.size(); ++k, ++pos) {
          auto const c = t.text[k];
          if (c != '0' && c != '1')
            throw ParseError(std::string("non-binary entry '") + c + "'", line,
                             t.column + k);
          if (c == '1')
            rows[i] |= std::uint64_t{1} << pos;
        }
      }
    }
  } else {
    auto const e = to_int(tokens[2], header_line);
    if (e < 0 || e > p * q)
      throw ParseError("edge count out of range", header_line, tokens[2].column);
    for (int k = 0; k < e; ++k) {
      if (!reader.next(tokens))
        throw ParseError("expected " + std::to_string(e) + " edges, got " +
                             std::to_string(k),
                         reader.number() + 1, 1);
      auto const line = reader.number();
      if (tokens.size() != 2)
        throw ParseError("edge line must be 'i j'", line, tokens.front().column);
      auto const i = to_int(tokens[0], line);
      auto const j = to_int(tokens[1], line);
      if (i < 0 || i >= p)
        throw ParseError("left index out of range", line, tokens[0].column);
      if (j < 0 || j >= q)
        throw ParseError("right index out of range", line, tokens[1].column);
      auto const bit = std::uint64_t{1} << j;
      if (rows[i] & bit)
        throw ParseError("duplicate edge", line, tokens[0].column);
      rows[i] |= bit;
    }
  }

  if (reader.next(tokens))
    throw ParseError("trailing content", reader.number(), tokens.front().column);
  return BipartiteGraph(p, q, std::move(rows));
}

BipartiteGraph read_graph_file(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  return read_graph(in);
}

void write_graph(std::ostream &out, BipartiteGraph const &g)
{
  out << g.p() << ' ' << g.q() << '\n';
  for (int i = 0; i < g.p(); ++i) {
    for (int j = 0; j < g.q(); ++j)
      out << (g.has_edge(i, j) ? '1' : '0');
    out << '\n';
  }
}

} // namespace bispec
