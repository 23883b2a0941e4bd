#ifndef BISPEC_GRAPH_IO_HPP
#define BISPEC_GRAPH_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "bispec/graph.hpp"

namespace bispec {

// Two text formats, both 0-indexed:
//
//   matrix:     "p q" then p lines of q characters in {0,1}
//   edge list:  "p q e" then e lines "i j"
//
// Blank lines and lines starting with '#' are skipped. Failures throw
// ParseError carrying the 1-based line and column.
BipartiteGraph read_graph(std::istream &in);
BipartiteGraph read_graph_file(std::filesystem::path const &path);

/// Writes the matrix format.
void write_graph(std::ostream &out, BipartiteGraph const &g);

} // namespace bispec

#endif // BISPEC_GRAPH_IO_HPP
