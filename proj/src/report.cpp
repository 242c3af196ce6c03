#include "spectral_part/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral_part/errors.hpp"

namespace spectral_part {

namespace {

Json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double get_num(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InputError("report: expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

Json nums(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

std::vector<double> get_nums(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(get_num(x));
  return out;
}

Json gap_json(const GapReport& g) {
  return Json{{"lambda", nums(g.lambda)},
              {"rho_avr_proxy", num(g.rho_avr_proxy)},
              {"phi_proxy", num(g.phi_proxy)},
              {"psi", num(g.psi)},
              {"upsilon", num(g.upsilon)},
              {"proxy_kind", to_string(g.proxy_kind)}};
}

GapReport gap_from(const Json& j) {
  GapReport g;
  g.lambda = get_nums(j.at("lambda"));
  g.rho_avr_proxy = get_num(j.at("rho_avr_proxy"));
  g.phi_proxy = get_num(j.at("phi_proxy"));
  g.psi = get_num(j.at("psi"));
  g.upsilon = get_num(j.at("upsilon"));
  const auto kind = j.at("proxy_kind").get<std::string>();
  g.proxy_kind = kind == "planted" ? ProxyKind::planted : ProxyKind::bruteforce_optimal;
  return g;
}

Json check_json(const CheckRecord& c) {
  return Json{{"name", c.name},
              {"lhs", num(c.lhs)},
              {"rhs", num(c.rhs)},
              {"slack", num(c.slack)},
              {"hypothesis_met", c.hypothesis_met},
              {"passed", c.passed},
              {"status", to_string(c.status())},
              {"note", c.note}};
}

CheckRecord check_from(const Json& j) {
  CheckRecord c;
  c.name = j.at("name").get<std::string>();
  c.lhs = get_num(j.at("lhs"));
  c.rhs = get_num(j.at("rhs"));
  c.slack = get_num(j.at("slack"));
  c.hypothesis_met = j.at("hypothesis_met").get<bool>();
  c.passed = j.at("passed").get<bool>();
  c.note = j.at("note").get<std::string>();
  return c;
}

}  // namespace

bool Report::any_failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.status() == CheckStatus::failed; });
}

Json to_json(const Report& r, bool with_timings) {
  Json j;
  j["schema"] = r.schema;
  const RunConfig& c = r.config;
  j["config"] = Json{{"command", c.command},
                     {"input", c.input},
                     {"gen", c.gen},
                     {"k", c.k},
                     {"mode", c.mode},
                     {"eps", num(c.eps)},
                     {"delta", num(c.delta)},
                     {"seed", c.seed},
                     {"restarts", c.restarts},
                     {"out", c.out},
                     {"dense_threshold", c.dense_threshold},
                     {"lambda_k1_lower", c.lambda_k1_lower ? num(*c.lambda_k1_lower) : Json(nullptr)},
                     {"alpha", num(c.alpha)},
                     {"partition", c.partition}};
  j["graph"] = Json{{"n", r.graph.n}, {"m", r.graph.m}, {"components", r.graph.components}};
  if (r.spectrum) {
    j["spectrum"] = Json{{"eigenvalues", nums(r.spectrum->eigenvalues)},
                         {"embedding_kind", r.spectrum->embedding_kind},
                         {"power_steps", r.spectrum->power_steps}};
  }
  if (r.gap) {
    const GapSection& g = *r.gap;
    j["gap"] = Json{{"report", gap_json(g.gap)},
                    {"psi_reference", num(g.psi_reference)},
                    {"delta_raw", num(g.delta_raw)},
                    {"delta", num(g.delta)},
                    {"delta_clamped", g.delta_clamped},
                    {"eps_bbt", num(g.eps_bbt)},
                    {"condition", num(g.condition)},
                    {"separation", nullptr}};
    if (g.separation) {
      const SeparationEstimate& sep = *g.separation;
      j["gap"]["separation"] = Json{{"ratio", num(sep.ratio)},
                                    {"delta_k", num(sep.delta_k)},
                                    {"delta_k_minus_1", num(sep.delta_k_minus_1)},
                                    {"method", to_string(sep.method)},
                                    {"degenerate", sep.degenerate}};
    }
  }
  if (r.clustering) {
    const ClusteringSummary& s = *r.clustering;
    j["clustering"] = Json{{"assignment", s.assignment},
                           {"block_conductance", nums(s.block_conductance)},
                           {"block_volume", s.block_volume},
                           {"cost", num(s.cost)},
                           {"permutation", s.permutation},
                           {"relative_sym_diff", nums(s.relative_sym_diff)},
                           {"max_relative_sym_diff",
                            s.max_relative_sym_diff ? num(*s.max_relative_sym_diff) : Json(nullptr)}};
  }
  if (r.constants) {
    const ConstantsSection& s = *r.constants;
    j["constants"] = Json{{"rho", num(s.rho)},
                          {"rho_hat", num(s.rho_hat)},
                          {"rho_avr", num(s.rho_avr)},
                          {"optimal_assignment", s.optimal_assignment},
                          {"inter_connection_computed", s.inter_connection_computed},
                          {"degenerate", s.degenerate},
                          {"rho_p", num(s.rho_p)},
                          {"kappa", num(s.kappa)},
                          {"rho_tilde_avr", num(s.rho_tilde_avr)},
                          {"optimal_tuples", s.optimal_tuples},
                          {"compatible_partitions", s.compatible_partitions},
                          {"witness_assignment", s.witness_assignment},
                          {"witness_tuple", s.witness_tuple}};
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  j["checks"] = std::move(checks);
  j["status"] = r.status;
  if (with_timings) {
    Json t = Json::object();
    for (const auto& [stage, seconds] : r.timings) t[stage] = seconds;
    j["timings"] = std::move(t);
  }
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw InputError("report: unsupported schema '" + r.schema + "'");
    const Json& c = j.at("config");
    r.config.command = c.at("command").get<std::string>();
    r.config.input = c.at("input").get<std::string>();
    r.config.gen = c.at("gen").get<std::string>();
    r.config.k = c.at("k").get<int>();
    r.config.mode = c.at("mode").get<std::string>();
    r.config.eps = get_num(c.at("eps"));
    r.config.delta = get_num(c.at("delta"));
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.restarts = c.at("restarts").get<int>();
    r.config.out = c.at("out").get<std::string>();
    r.config.dense_threshold = c.at("dense_threshold").get<std::size_t>();
    if (!c.at("lambda_k1_lower").is_null()) r.config.lambda_k1_lower = get_num(c.at("lambda_k1_lower"));
    r.config.alpha = get_num(c.at("alpha"));
    r.config.partition = c.at("partition").get<std::string>();

    const Json& g = j.at("graph");
    r.graph = {g.at("n").get<std::size_t>(), g.at("m").get<std::size_t>(), g.at("components").get<std::size_t>()};

    if (j.contains("spectrum")) {
      const Json& s = j.at("spectrum");
      r.spectrum = SpectrumSummary{get_nums(s.at("eigenvalues")), s.at("embedding_kind").get<std::string>(),
                                   s.at("power_steps").get<int>()};
    }
    if (j.contains("gap")) {
      const Json& s = j.at("gap");
      GapSection gs;
      gs.gap = gap_from(s.at("report"));
      gs.psi_reference = get_num(s.at("psi_reference"));
      gs.delta_raw = get_num(s.at("delta_raw"));
      gs.delta = get_num(s.at("delta"));
      gs.delta_clamped = s.at("delta_clamped").get<bool>();
      gs.eps_bbt = get_num(s.at("eps_bbt"));
      gs.condition = get_num(s.at("condition"));
      const Json& sep = s.at("separation");
      if (!sep.is_null()) {
        SeparationEstimate est;
        est.ratio = get_num(sep.at("ratio"));
        est.delta_k = get_num(sep.at("delta_k"));
        est.delta_k_minus_1 = get_num(sep.at("delta_k_minus_1"));
        est.method = sep.at("method").get<std::string>() == "bruteforce" ? SeparationMethod::bruteforce
                                                                         : SeparationMethod::heuristic;
        est.degenerate = sep.at("degenerate").get<bool>();
        gs.separation = est;
      }
      r.gap = gs;
    }
    if (j.contains("clustering")) {
      const Json& s = j.at("clustering");
      ClusteringSummary cs;
      cs.assignment = s.at("assignment").get<std::vector<int>>();
      cs.block_conductance = get_nums(s.at("block_conductance"));
      cs.block_volume = s.at("block_volume").get<std::vector<std::uint64_t>>();
      cs.cost = get_num(s.at("cost"));
      cs.permutation = s.at("permutation").get<std::vector<int>>();
      cs.relative_sym_diff = get_nums(s.at("relative_sym_diff"));
      if (!s.at("max_relative_sym_diff").is_null()) cs.max_relative_sym_diff = get_num(s.at("max_relative_sym_diff"));
      r.clustering = cs;
    }
    if (j.contains("constants")) {
      const Json& s = j.at("constants");
      ConstantsSection cs;
      cs.rho = get_num(s.at("rho"));
      cs.rho_hat = get_num(s.at("rho_hat"));
      cs.rho_avr = get_num(s.at("rho_avr"));
      cs.optimal_assignment = s.at("optimal_assignment").get<std::vector<int>>();
      cs.inter_connection_computed = s.at("inter_connection_computed").get<bool>();
      cs.degenerate = s.at("degenerate").get<bool>();
      cs.rho_p = get_num(s.at("rho_p"));
      cs.kappa = get_num(s.at("kappa"));
      cs.rho_tilde_avr = get_num(s.at("rho_tilde_avr"));
      cs.optimal_tuples = s.at("optimal_tuples").get<std::size_t>();
      cs.compatible_partitions = s.at("compatible_partitions").get<std::size_t>();
      cs.witness_assignment = s.at("witness_assignment").get<std::vector<int>>();
      cs.witness_tuple = s.at("witness_tuple").get<std::vector<int>>();
      r.constants = cs;
    }
    for (const auto& c : j.at("checks")) r.checks.push_back(check_from(c));
    r.status = j.at("status").get<std::string>();
    if (j.contains("timings")) {
      for (const auto& [stage, seconds] : j.at("timings").items()) r.timings.emplace_back(stage, seconds.get<double>());
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

std::string serialize(const Report& r, bool with_timings) { return to_json(r, with_timings).dump(2) + "\n"; }

Report parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return report_from_json(j);
}

bool operator==(const Report& a, const Report& b) { return to_json(a) == to_json(b); }

}  // namespace spectral_part
