#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spectral_part/diagnostics.hpp"
#include "spectral_part/kmeans.hpp"

namespace spectral_part {

inline constexpr const char* kReportSchema = "spectral-part/1";

struct RunConfig {
  std::string command;
  std::string input;               // edge-list path, or empty
  std::string gen;                 // generator spec, or empty
  int k = 2;
  std::string mode = "exact";      // exact | power
  double eps = 0.01;
  double delta = 0.1;
  std::uint64_t seed = 0;
  int restarts = 20;
  std::string out;
  std::size_t dense_threshold = tol::default_dense_threshold;
  std::optional<double> lambda_k1_lower;
  double alpha = 1.1;
  std::string partition;           // reference partition file, or empty
};

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t components = 0;
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;   // lambda_1 .. lambda_{k+1} when known
  std::string embedding_kind;
  int power_steps = 0;
};

struct ClusteringSummary {
  std::vector<int> assignment;
  std::vector<double> block_conductance;
  std::vector<std::uint64_t> block_volume;
  double cost = 0.0;
  // Comparison with the planted partition, when one is known.
  std::vector<int> permutation;
  std::vector<double> relative_sym_diff;
  std::optional<double> max_relative_sym_diff;
};

struct GapSection {
  GapReport gap;
  double psi_reference = 0.0;
  double delta_raw = 0.0;
  double delta = 0.0;
  bool delta_clamped = false;
  double eps_bbt = 0.0;
  double condition = 0.0;
  std::optional<SeparationEstimate> separation;
};

struct ConstantsSection {
  double rho = 0.0;
  double rho_hat = 0.0;
  double rho_avr = 0.0;
  std::vector<int> optimal_assignment;
  bool inter_connection_computed = false;
  bool degenerate = false;
  double rho_p = 0.0;
  double kappa = 0.0;
  double rho_tilde_avr = 0.0;
  std::size_t optimal_tuples = 0;
  std::size_t compatible_partitions = 0;
  std::vector<int> witness_assignment;
  std::vector<int> witness_tuple;
};

struct Report {
  std::string schema = kReportSchema;
  RunConfig config;
  GraphStats graph;
  std::optional<SpectrumSummary> spectrum;
  std::optional<GapSection> gap;
  std::optional<ClusteringSummary> clustering;
  std::optional<ConstantsSection> constants;
  std::vector<CheckRecord> checks;
  std::string status = "ok";       // ok | failed
  std::vector<std::pair<std::string, double>> timings;   // seconds per stage

  bool any_failed() const;
};

using Json = nlohmann::ordered_json;

/// Infinite values are written as the strings "inf" / "-inf" and NaN as
/// null. `with_timings` = false drops the timings section (the part that
/// may differ between identical runs).
Json to_json(const Report& r, bool with_timings = true);
Report report_from_json(const Json& j);

/// Pretty-printed JSON followed by a newline.
std::string serialize(const Report& r, bool with_timings = true);
Report parse_report(const std::string& text);

/// Field-wise equality (NaN equals NaN), timings included.
bool operator==(const Report& a, const Report& b);

}  // namespace spectral_part
