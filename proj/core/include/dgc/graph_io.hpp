#pragma once

#include <iosfwd>
#include <string>

#include "dgc/graph.hpp"

namespace dgc {

// Edge-list text format: one edge per line, "u v w" (0-based indices,
// decimal weight); '#' starts a comment; blank lines are skipped.
// This is the interchange format for all modules and the CLI.

// Node count is 1 + max referenced index unless `n_hint` is larger.
Graph read_edge_list(std::istream& in, NodeId n_hint = 0);
Graph read_edge_list_file(const std::string& path, NodeId n_hint = 0);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace dgc
