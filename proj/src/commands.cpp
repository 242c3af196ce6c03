#include "spectral_part/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spectral_part/diagnostics.hpp"
#include "spectral_part/graph_io.hpp"
#include "spectral_part/matching.hpp"
#include "spectral_part/partition_constants.hpp"
#include "spectral_part/spectral.hpp"

namespace spectral_part {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  explicit StageTimer(Report& r) : report_(r), start_(Clock::now()) {}
  void lap(const std::string& stage) {
    const auto now = Clock::now();
    report_.timings.emplace_back(stage, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  Report& report_;
  Clock::time_point start_;
};

[[noreturn]] void bad_spec(const std::string& spec, const std::string& why) {
  throw InputError("invalid generator spec '" + spec + "' (" + why + "); grammar: " + kGenGrammar);
}

std::map<std::string, std::string> spec_fields(const std::string& spec, const std::string& body) {
  std::map<std::string, std::string> fields;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) bad_spec(spec, "expected key=value, got '" + item + "'");
    if (!fields.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
      bad_spec(spec, "repeated key '" + item.substr(0, eq) + "'");
    }
  }
  return fields;
}

std::string take(std::map<std::string, std::string>& fields, const std::string& spec, const std::string& key) {
  auto it = fields.find(key);
  if (it == fields.end()) bad_spec(spec, "missing '" + key + "'");
  std::string value = it->second;
  fields.erase(it);
  return value;
}

int to_int(const std::string& spec, const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    bad_spec(spec, "'" + text + "' is not an integer");
  }
  if (used != text.size()) bad_spec(spec, "'" + text + "' is not an integer");
  return value;
}

double to_double(const std::string& spec, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    bad_spec(spec, "'" + text + "' is not a number");
  }
  if (used != text.size()) bad_spec(spec, "'" + text + "' is not a number");
  return value;
}

GraphStats stats_of(const Graph& g) { return {g.num_vertices(), g.num_edges(), g.num_components()}; }

std::vector<double> first_eigenvalues(const EigenSystem& eig, int count) {
  std::vector<double> out;
  for (int j = 0; j < count && j < eig.values.size(); ++j) out.push_back(eig.values(j));
  return out;
}

ClusteringSummary summarize(const Graph& g, const Partition& clustered, double cost_value,
                            const std::optional<Partition>& reference) {
  ClusteringSummary s;
  s.assignment.assign(clustered.assignment().begin(), clustered.assignment().end());
  const auto stats = block_stats(g, clustered);
  for (int i = 0; i < clustered.num_blocks(); ++i) s.block_conductance.push_back(stats.conductance(i).value());
  s.block_volume = stats.volume;
  s.cost = cost_value;
  if (reference && reference->num_blocks() == clustered.num_blocks()) {
    const auto match = match_partitions(g, clustered, *reference);
    s.permutation = match.permutation;
    s.relative_sym_diff = match.relative_sym_diff;
    s.max_relative_sym_diff = match.max_relative_sym_diff;
  }
  return s;
}

Partition cluster_vertices(const WeightedPoints& pts, int k, std::uint64_t seed, int restarts, double* cost_out) {
  const Clustering c = best_of_orss(pts, k, seed, restarts);
  *cost_out = c.cost;
  return Partition::from_assignment(c.assignment, k);
}

void write_report_file(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << serialize(r);
  if (!out) throw InputError("failed writing '" + path + "'");
}

Report base_report(const RunConfig& cfg, const char* command) {
  Report r;
  r.config = cfg;
  r.config.command = command;
  return r;
}

}  // namespace

PlantedGraph generate_from_spec(const std::string& spec, std::uint64_t seed, int k) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) bad_spec(spec, "missing ':'");
  const std::string family = spec.substr(0, colon);
  auto fields = spec_fields(spec, spec.substr(colon + 1));
  PlantedGraph out = [&]() -> PlantedGraph {
    if (family == "ring") {
      const int kk = to_int(spec, take(fields, spec, "k"));
      const int size = to_int(spec, take(fields, spec, "size"));
      const int b = to_int(spec, take(fields, spec, "b"));
      return ring_of_cliques(kk, size, b, seed);
    }
    if (family == "sbm") {
      std::vector<int> sizes;
      std::stringstream ss(take(fields, spec, "sizes"));
      std::string part;
      while (std::getline(ss, part, '/')) sizes.push_back(to_int(spec, part));
      if (sizes.empty()) bad_spec(spec, "empty sizes");
      const double pin = to_double(spec, take(fields, spec, "pin"));
      const double pout = to_double(spec, take(fields, spec, "pout"));
      return stochastic_block_model(sizes, pin, pout, seed);
    }
    if (family == "clique") return complete_graph(to_int(spec, take(fields, spec, "n")), k);
    if (family == "path") return path_graph(to_int(spec, take(fields, spec, "n")), k);
    bad_spec(spec, "unknown family '" + family + "'");
  }();
  if (!fields.empty()) bad_spec(spec, "unknown key '" + fields.begin()->first + "'");
  return out;
}

void validate_config(const RunConfig& cfg) {
  const bool has_input = !cfg.input.empty();
  const bool has_gen = !cfg.gen.empty();
  if (has_input == has_gen) throw InputError("exactly one of --input and --gen is required");
  if (cfg.k < 2) throw InputError("--k must be >= 2");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw InputError("--eps must lie in (0, 1)");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InputError("--delta must lie in (0, 1)");
  if (cfg.mode != "exact" && cfg.mode != "power") throw InputError("--mode must be exact or power");
  if (cfg.restarts < 1) throw InputError("--restarts must be >= 1");
  if (cfg.lambda_k1_lower && !(*cfg.lambda_k1_lower > 0.0 && *cfg.lambda_k1_lower <= 2.0)) {
    throw InputError("--lambda-k1-lower must lie in (0, 2]");
  }
  if (!(cfg.alpha >= 1.0)) throw InputError("--alpha must be >= 1");
}

LoadedInput load_input(const RunConfig& cfg) {
  if (!cfg.gen.empty()) {
    PlantedGraph pg = generate_from_spec(cfg.gen, cfg.seed, cfg.k);
    LoadedInput in{std::move(pg.graph), std::move(pg.planted)};
    if (!cfg.partition.empty()) in.reference = read_partition_file(cfg.partition, in.graph.num_vertices());
    return in;
  }
  LoadedInput in{read_edge_list_file(cfg.input), std::nullopt};
  if (!cfg.partition.empty()) in.reference = read_partition_file(cfg.partition, in.graph.num_vertices());
  return in;
}

Report cmd_cluster(const RunConfig& cfg) {
  validate_config(cfg);
  Report r = base_report(cfg, "cluster");
  StageTimer timer(r);
  LoadedInput in = load_input(cfg);
  const Graph& g = in.graph;
  r.graph = stats_of(g);
  const std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(cfg.k) > n) throw InputError("k exceeds the number of vertices");
  timer.lap("load");

  SpectrumSummary spectrum;
  std::optional<EigenSystem> eig;
  Embedding embedding;
  if (cfg.mode == "exact") {
    ExactSpectrum ex = exact_embedding(g, cfg.k, cfg.dense_threshold);
    embedding = std::move(ex.embedding);
    eig = std::move(ex.eigen);
    spectrum.embedding_kind = "exact";
    timer.lap("eigensolve");
  } else {
    if (static_cast<std::size_t>(cfg.k) >= n) throw InputError("power mode needs k < n");
    double lambda_k = 0.0, lambda_k1 = 0.0;
    if (n <= cfg.dense_threshold) {
      eig = sym_eig(LaplacianOps(g, cfg.dense_threshold).dense_laplacian());
      lambda_k = eig->values(cfg.k - 1);
      lambda_k1 = eig->values(cfg.k);
      timer.lap("eigensolve");
    } else if (cfg.lambda_k1_lower) {
      lambda_k1 = *cfg.lambda_k1_lower;
    } else {
      throw InputError("graph has " + std::to_string(n) + " vertices, above the dense threshold; power mode needs "
                       "--lambda-k1-lower");
    }
    PowerParams params;
    params.eps = cfg.eps;
    params.delta = cfg.delta;
    params.seed = cfg.seed;
    params.p = required_power_steps(n, cfg.k, cfg.eps, cfg.delta, lambda_k, lambda_k1);
    embedding = power_embedding(g, cfg.k, params);
    spectrum.embedding_kind = "approximate";
    spectrum.power_steps = params.p;
    timer.lap("power_method");
  }
  if (eig) spectrum.eigenvalues = first_eigenvalues(*eig, cfg.k + 1);
  r.spectrum = spectrum;

  double cost_value = 0.0;
  const Partition clustered =
      cluster_vertices(normalized_weighted_pointset(embedding), cfg.k, cfg.seed, cfg.restarts, &cost_value);
  r.clustering = summarize(g, clustered, cost_value, in.reference);
  timer.lap("kmeans");

  if (eig && in.reference && static_cast<std::size_t>(cfg.k) < n) {
    // Best effort: a graph without k+1 nonzero eigenvalues simply has no gap section.
    try {
      GapSection gs;
      gs.gap = gap_report(g, cfg.k, *in.reference, *eig);
      const double avg = partition_avg_phi(g, *in.reference);
      const GapParameters gp =
          gap_parameters(avg > 0.0 ? eig->values(cfg.k) / avg : std::numeric_limits<double>::infinity(), cfg.k);
      gs.psi_reference = gp.psi;
      gs.delta_raw = gp.delta_raw;
      gs.delta = gp.delta;
      gs.delta_clamped = gp.delta_clamped;
      gs.eps_bbt = gp.eps_bbt;
      r.gap = gs;
    } catch (const GapError&) {
    }
  }
  if (!cfg.out.empty()) write_report_file(r, cfg.out);
  return r;
}

Report cmd_diagnose(const RunConfig& cfg) {
  validate_config(cfg);
  Report r = base_report(cfg, "diagnose");
  StageTimer timer(r);
  LoadedInput in = load_input(cfg);
  const Graph& g = in.graph;
  r.graph = stats_of(g);
  if (!in.reference) throw InputError("diagnose needs a reference partition: --partition or --gen");
  if (static_cast<std::size_t>(cfg.k) >= g.num_vertices()) throw InputError("diagnose needs k < n");
  timer.lap("load");

  const ExactSpectrum ex = exact_embedding(g, cfg.k, cfg.dense_threshold);
  r.spectrum = SpectrumSummary{first_eigenvalues(ex.eigen, cfg.k + 1), "exact", 0};
  timer.lap("eigensolve");

  double cost_value = 0.0;
  const Partition clustered =
      cluster_vertices(normalized_weighted_pointset(ex.embedding), cfg.k, cfg.seed, cfg.restarts, &cost_value);
  r.clustering = summarize(g, clustered, cost_value, in.reference);
  timer.lap("kmeans");

  CheckOptions options;
  options.alpha = cfg.alpha;
  options.seed = cfg.seed;
  options.restarts = cfg.restarts;
  options.dense_threshold = cfg.dense_threshold;
  TheoremChecks tc = run_theorem_checks(g, ex, cfg.k, *in.reference, &clustered, options);
  timer.lap("checks");

  GapSection gs;
  gs.gap = tc.gap;
  gs.psi_reference = tc.psi;
  gs.delta_raw = tc.delta_raw;
  gs.delta = tc.delta;
  gs.delta_clamped = tc.delta_clamped;
  gs.eps_bbt = tc.eps_bbt;
  gs.condition = tc.condition;
  gs.separation = tc.separation;
  r.gap = gs;
  r.checks = std::move(tc.records);
  r.status = r.any_failed() ? "failed" : "ok";
  if (!cfg.out.empty()) write_report_file(r, cfg.out);
  return r;
}

Report cmd_generate(const RunConfig& cfg) {
  if (cfg.gen.empty()) throw InputError("generate needs --gen SPEC");
  if (cfg.out.empty()) throw InputError("generate needs --out PREFIX");
  Report r = base_report(cfg, "generate");
  const PlantedGraph pg = generate_from_spec(cfg.gen, cfg.seed, cfg.k);
  r.graph = stats_of(pg.graph);
  const auto write = [](const std::string& path, auto&& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    body(out);
    if (!out) throw InputError("failed writing '" + path + "'");
  };
  write(cfg.out + ".edges", [&](std::ostream& os) { write_edge_list(os, pg.graph); });
  write(cfg.out + ".part", [&](std::ostream& os) { write_partition(os, pg.planted); });
  return r;
}

Report cmd_verify(const RunConfig& cfg) {
  validate_config(cfg);
  Report r = base_report(cfg, "verify");
  StageTimer timer(r);
  LoadedInput in = load_input(cfg);
  const Graph& g = in.graph;
  r.graph = stats_of(g);
  const std::size_t n = g.num_vertices();
  if (n > kBruteforceMaxVertices) {
    throw CapacityError("verify enumerates exhaustively and supports at most " +
                        std::to_string(kBruteforceMaxVertices) + " vertices, graph has " + std::to_string(n));
  }
  const int k = cfg.k;
  const double kd = k;
  timer.lap("load");

  const PartitionConstants pc = bruteforce_partition_constants(g, k);
  ConstantsSection cs;
  cs.rho = pc.rho;
  cs.rho_hat = pc.rho_hat;
  cs.rho_avr = pc.rho_avr;
  cs.optimal_assignment.assign(pc.optimal.assignment().begin(), pc.optimal.assignment().end());

  const ExactSpectrum ex = exact_embedding(g, k, cfg.dense_threshold);
  r.spectrum = SpectrumSummary{first_eigenvalues(ex.eigen, k + 1), "exact", 0};
  const double lambda_k = ex.eigen.values(k - 1);
  r.checks.push_back(make_check("rho_le_rho_hat", pc.rho, pc.rho_hat, true));
  r.checks.push_back(make_check("rho_hat_le_k_rho", pc.rho_hat, kd * pc.rho, true));
  r.checks.push_back(make_check("half_lambda_k_le_rho", lambda_k / 2.0, pc.rho, true));
  timer.lap("partition_constants");

  if (n <= kInterConnectionMaxVertices) {
    const InterConnection ic = inter_connection(g, k);
    cs.inter_connection_computed = true;
    cs.degenerate = ic.degenerate;
    cs.optimal_tuples = ic.optimal_tuples;
    cs.compatible_partitions = ic.compatible_partitions;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (ic.degenerate) {
      const std::string note = "degenerate: a compatible partition attains rho(k)";
      r.checks.push_back(make_check("rho_p_positive", nan, nan, false, note));
      r.checks.push_back(make_check("rho_p_upper", nan, nan, false, note));
      r.checks.push_back(make_check("witness_block_bound", nan, nan, false, note));
      r.checks.push_back(make_check("witness_average_bound", nan, nan, false, note));
    } else {
      cs.rho_p = ic.rho_p;
      cs.kappa = ic.kappa;
      cs.rho_tilde_avr = ic.rho_tilde_avr;
      cs.witness_assignment.assign(ic.witness->assignment().begin(), ic.witness->assignment().end());
      cs.witness_tuple.assign(ic.witness_tuple->assignment().begin(), ic.witness_tuple->assignment().end());
      // rho_p is a ratio with denominator at most m, so rho_p > 0 iff rho_p >= 1/m.
      r.checks.push_back(
          make_check("rho_p_positive", 1.0 / static_cast<double>(g.num_edges()), ic.rho_p, true, "strict, as >= 1/m"));
      r.checks.push_back(make_check("rho_p_upper", ic.rho_p, 1.0 - 1.0 / (kd - 1.0), k >= 3,
                                    k >= 3 ? "" : "bound is 0 for k = 2"));
      const auto p_stats = block_stats(g, *ic.witness);
      const auto z_stats = block_stats(g, *ic.witness_tuple);
      double worst_slack = std::numeric_limits<double>::infinity();
      double worst_lhs = 0.0, worst_rhs = 0.0, z_sum = 0.0;
      for (int i = 0; i < k; ++i) {
        const double phi_p = p_stats.conductance(i).value();
        const double phi_z = z_stats.conductance(i).value();
        z_sum += phi_z;
        const double bound = std::isinf(ic.kappa) ? ic.kappa : ic.kappa * phi_z;
        if (bound - phi_p < worst_slack) {
          worst_slack = bound - phi_p;
          worst_lhs = phi_p;
          worst_rhs = bound;
        }
      }
      r.checks.push_back(make_check("witness_block_bound", worst_lhs, worst_rhs, true));
      const double avg_bound = std::isinf(ic.kappa) ? ic.kappa : ic.kappa / kd * z_sum;
      r.checks.push_back(make_check("witness_average_bound", ic.rho_tilde_avr, avg_bound, true));
    }
    timer.lap("inter_connection");
  }
  r.constants = cs;

  // k-means oracle: the seeded heuristic against exhaustive search on the
  // embedding of this graph.
  const WeightedPoints pts = normalized_weighted_pointset(ex.embedding);
  if (count_distinct_points(pts) >= static_cast<std::size_t>(k)) {
    const SeparationEstimate sep = separation_ratio(pts, k, cfg.seed, cfg.restarts);
    const double heuristic = best_of_orss(pts, k, cfg.seed, cfg.restarts).cost;
    const double optimal = sep.delta_k;
    r.checks.push_back(make_check("kmeans_heuristic_ge_optimal", optimal, heuristic, true));
    r.checks.push_back(make_check("kmeans_heuristic_near_optimal", heuristic, 1.1 * optimal, sep.ratio <= 1e-3,
                                  "applies to separation ratio <= 1e-3"));
  }
  timer.lap("kmeans_oracle");

  r.status = r.any_failed() ? "failed" : "ok";
  if (!cfg.out.empty()) write_report_file(r, cfg.out);
  return r;
}

int exit_code(const Report& r) { return r.any_failed() ? 1 : 0; }

int exit_code(ErrorKind kind) { return kind == ErrorKind::input ? 2 : 3; }

Json error_json(ErrorKind kind, const std::string& message) {
  return Json{{"schema", kReportSchema}, {"error", Json{{"kind", to_string(kind)}, {"message", message}}}};
}

}  // namespace spectral_part
