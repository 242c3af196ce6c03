// spectral-part: spectral clustering and diagnostics from the command line.
//
//   spectral-part cluster  --gen ring:k=3,size=20,b=1 --k 3 --mode power
//   spectral-part diagnose --input g.edges --partition g.part --k 3
//   spectral-part generate --gen sbm:sizes=30/30,pin=0.5,pout=0.02 --out g
//   spectral-part verify   --input small.edges --k 2
//
// The report JSON goes to stdout (and to --out for cluster, diagnose and
// verify). Errors are printed as JSON on stdout with a nonzero exit code.

#include <iostream>

#include <CLI11.hpp>

#include "spectral_part/commands.hpp"

namespace sp = spectral_part;

namespace {

void add_common(CLI::App* cmd, sp::RunConfig& cfg, std::optional<double>& lambda_k1) {
  auto* input = cmd->add_option("--input", cfg.input, "edge-list file");
  auto* gen = cmd->add_option("--gen", cfg.gen, std::string("generator spec: ") + sp::kGenGrammar);
  input->excludes(gen);
  cmd->add_option("--k", cfg.k, "number of clusters");
  cmd->add_option("--seed", cfg.seed, "seed for generators, power method and k-means");
  cmd->add_option("--out", cfg.out, "output path (report JSON; file prefix for generate)");
  cmd->add_option("--partition", cfg.partition, "reference partition file");
  cmd->add_option("--mode", cfg.mode, "exact | power")->check(CLI::IsMember({"exact", "power"}));
  cmd->add_option("--eps", cfg.eps, "power-method accuracy");
  cmd->add_option("--delta", cfg.delta, "power-method failure probability");
  cmd->add_option("--restarts", cfg.restarts, "k-means restarts");
  cmd->add_option("--dense-threshold", cfg.dense_threshold, "largest n solved densely");
  cmd->add_option("--lambda-k1-lower", lambda_k1, "certified lower bound on lambda_{k+1}");
  cmd->add_option("--alpha", cfg.alpha, "approximation factor assumed for the clustering");
}

int fail(sp::ErrorKind kind, const std::string& message) {
  std::cout << sp::error_json(kind, message).dump(2) << "\n";
  return sp::exit_code(kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral graph partitioning with numerical guarantee checks"};
  app.require_subcommand(1);
  sp::RunConfig cfg;
  std::optional<double> lambda_k1;
  auto* cluster = app.add_subcommand("cluster", "spectral embedding followed by weighted k-means");
  auto* diagnose = app.add_subcommand("diagnose", "evaluate the structural inequalities on a reference partition");
  auto* generate = app.add_subcommand("generate", "write a generated graph and its planted partition");
  auto* verify = app.add_subcommand("verify", "exhaustive cross-checks on graphs with at most 12 vertices");
  for (auto* cmd : {cluster, diagnose, generate, verify}) add_common(cmd, cfg, lambda_k1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(sp::ErrorKind::input, e.what());
  }
  cfg.lambda_k1_lower = lambda_k1;

  try {
    sp::Report report;
    if (*cluster) {
      report = sp::cmd_cluster(cfg);
    } else if (*diagnose) {
      report = sp::cmd_diagnose(cfg);
    } else if (*generate) {
      report = sp::cmd_generate(cfg);
    } else {
      report = sp::cmd_verify(cfg);
    }
    std::cout << sp::serialize(report);
    return sp::exit_code(report);
  } catch (const sp::Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(sp::ErrorKind::numeric, e.what());
  }
}
