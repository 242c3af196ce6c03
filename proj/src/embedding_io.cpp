#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "spectral_part/errors.hpp"
#include "spectral_part/spectral.hpp"

namespace spectral_part {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_embedding(std::ostream& out, const Embedding& e) {
  out << "#spectral-embedding " << e.size() << ' ' << e.dim() << ' ' << to_string(e.kind) << ' '
      << e.power_steps << ' ' << e.seed << '\n';
  for (Eigen::Index u = 0; u < e.coords.rows(); ++u) {
    out << u << ' ' << static_cast<std::uint64_t>(e.weights(u));
    for (Eigen::Index j = 0; j < e.coords.cols(); ++j) out << ' ' << format_double(e.coords(u, j));
    out << '\n';
  }
}

Embedding read_embedding(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("embedding: missing header");
  std::istringstream header(line);
  std::string tag, kind;
  std::size_t n = 0;
  int k = 0;
  Embedding e;
  if (!(header >> tag >> n >> k >> kind >> e.power_steps >> e.seed) || tag != "#spectral-embedding") {
    throw InputError("embedding: malformed header '" + line + "'");
  }
  if (kind == "exact") {
    e.kind = EmbeddingKind::exact;
  } else if (kind == "approximate") {
    e.kind = EmbeddingKind::approximate;
  } else {
    throw InputError("embedding: unknown kind '" + kind + "'");
  }
  if (n == 0 || k < 1) throw InputError("embedding: empty dimensions in header");

  const auto rows = static_cast<Eigen::Index>(n);
  e.coords.resize(rows, k);
  e.weights.resize(rows);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw InputError("embedding: expected " + std::to_string(n) + " vertex lines");
    std::istringstream row(line);
    std::size_t u = 0;
    double d = 0.0;
    if (!(row >> u >> d) || u != i || !(d > 0.0)) {
      throw InputError("embedding: bad vertex line " + std::to_string(i + 2));
    }
    e.weights(static_cast<Eigen::Index>(i)) = d;
    for (int j = 0; j < k; ++j) {
      if (!(row >> e.coords(static_cast<Eigen::Index>(i), j))) {
        throw InputError("embedding: too few coordinates on line " + std::to_string(i + 2));
      }
    }
  }
  e.basis = e.weights.cwiseSqrt().asDiagonal() * e.coords;
  return e;
}

}  // namespace spectral_part
