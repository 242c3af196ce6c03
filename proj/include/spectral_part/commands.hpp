#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spectral_part/errors.hpp"
#include "spectral_part/generators.hpp"
#include "spectral_part/report.hpp"

namespace spectral_part {

/// Generator specs:
///   ring:k=INT,size=INT,b=INT
///   sbm:sizes=INT/INT/...,pin=F,pout=F
///   clique:n=INT          (planted blocks from k)
///   path:n=INT            (planted blocks from k)
inline constexpr const char* kGenGrammar =
    "ring:k=INT,size=INT,b=INT | sbm:sizes=INT/INT/...,pin=F,pout=F | clique:n=INT | path:n=INT";

/// Throws InputError naming the grammar for a malformed spec.
PlantedGraph generate_from_spec(const std::string& spec, std::uint64_t seed, int k);

/// The graph of a run and, when known, its reference partition (planted by
/// the generator, or read from config.partition, which takes precedence).
struct LoadedInput {
  Graph graph;
  std::optional<Partition> reference;
};

LoadedInput load_input(const RunConfig& cfg);

/// Throws InputError for an inconsistent config (input sources, k, eps,
/// delta, mode, restarts).
void validate_config(const RunConfig& cfg);

Report cmd_cluster(const RunConfig& cfg);
Report cmd_diagnose(const RunConfig& cfg);
/// Writes <out>.edges and <out>.part.
Report cmd_generate(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);

/// 0 when no applicable check failed, else 1.
int exit_code(const Report& r);
/// 2 for input errors, 3 for numeric, capacity and gap errors.
int exit_code(ErrorKind kind);

Json error_json(ErrorKind kind, const std::string& message);

}  // namespace spectral_part
