#include "spectral_part/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "spectral_part/errors.hpp"

namespace spectral_part {

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

// Parses exactly two non-negative integers from a line; returns false for a
// blank line and throws for anything malformed.
bool parse_pair(const std::string& raw, std::size_t line_no, std::uint64_t& a, std::uint64_t& b) {
  std::istringstream fields(strip_comment(raw));
  std::string tok[3];
  int count = 0;
  while (count < 3 && fields >> tok[count]) ++count;
  if (count == 0) return false;
  if (count != 2) {
    throw InputError("line " + std::to_string(line_no) + ": expected two integers, got '" + raw + "'");
  }
  auto parse = [&](const std::string& s, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InputError("line " + std::to_string(line_no) + ": '" + s + "' is not a vertex id");
    }
  };
  parse(tok[0], a);
  parse(tok[1], b);
  return true;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> first_seen;
  std::uint64_t max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_pair(line, line_no, u, v)) continue;
    if (u > UINT32_MAX || v > UINT32_MAX) {
      throw InputError("line " + std::to_string(line_no) + ": vertex id too large");
    }
    if (u == v) throw InputError("line " + std::to_string(line_no) + ": self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    auto [it, inserted] = first_seen.emplace(key, line_no);
    if (!inserted) {
      throw InputError("line " + std::to_string(line_no) + ": edge (" + std::to_string(u) + ", " +
                       std::to_string(v) + ") repeats line " + std::to_string(it->second));
    }
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.empty()) throw InputError("edge list is empty");
  return Graph::from_edges(static_cast<std::size_t>(max_id) + 1, edges);
}

Graph read_edge_list_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Partition read_partition(std::istream& in, std::size_t n) {
  std::vector<int> assignment(n, Partition::kUncovered);
  std::vector<std::size_t> line_of(n, 0);
  int k = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::uint64_t v = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, line_no, v, b)) continue;
    if (v >= n) {
      throw InputError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                       " outside [0, " + std::to_string(n) + ")");
    }
    if (b > 1'000'000) throw InputError("line " + std::to_string(line_no) + ": block id too large");
    if (assignment[v] != Partition::kUncovered) {
      throw InputError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                       " already assigned on line " + std::to_string(line_of[v]) +
                       " (overlapping blocks)");
    }
    assignment[v] = static_cast<int>(b);
    line_of[v] = line_no;
    k = std::max(k, static_cast<int>(b) + 1);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (assignment[v] == Partition::kUncovered) {
      throw InputError("vertex " + std::to_string(v) + " missing from partition file");
    }
  }
  return Partition::from_assignment(std::move(assignment), k);
}

Partition read_partition_file(const std::string& path, std::size_t n) {
  auto in = open_or_throw(path);
  return read_partition(in, n);
}

void write_partition(std::ostream& out, const Partition& p) {
  out << "# n=" << p.num_vertices() << " k=" << p.num_blocks() << '\n';
  for (std::size_t v = 0; v < p.num_vertices(); ++v) {
    const int b = p.block_of(static_cast<Vertex>(v));
    if (b != Partition::kUncovered) out << v << ' ' << b << '\n';
  }
}

}  // namespace spectral_part
