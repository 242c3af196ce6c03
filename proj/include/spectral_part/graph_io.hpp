#pragma once

#include <iosfwd>
#include <string>

#include "spectral_part/graph.hpp"

namespace spectral_part {

// Edge-list text format: one "u v" pair per line, 0-based ids separated by
// whitespace. '#' starts a comment that runs to the end of the line. The
// vertex count is one more than the largest id. A pair that repeats an
// earlier one (in either orientation) is rejected with its line number.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Canonical form: a comment header, then "u v" with u < v in sorted order.
void write_edge_list(std::ostream& out, const Graph& g);

// Partition text format: one "vertex block" pair per line, 0-based, '#'
// comments. A vertex listed twice (overlapping blocks) or a missing vertex
// is an input error.
Partition read_partition(std::istream& in, std::size_t n);
Partition read_partition_file(const std::string& path, std::size_t n);
void write_partition(std::ostream& out, const Partition& p);

}  // namespace spectral_part
