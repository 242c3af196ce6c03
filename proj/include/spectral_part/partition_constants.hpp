#pragma once

#include <cstddef>
#include <optional>

#include "spectral_part/graph.hpp"

namespace spectral_part {

/// Exact order-k constants of a small graph.
struct PartitionConstants {
  int k = 0;
  double rho = 0.0;       // min over disjoint nonempty k-tuples of max phi
  double rho_hat = 0.0;   // min over k-way partitions of max phi
  double rho_avr = 0.0;   // min average phi among partitions with max phi == rho_hat
  Partition tuple_witness;    // tuple mode, attains rho
  Partition optimal;          // attains rho_hat and rho_avr
};

inline constexpr std::size_t kBruteforceMaxVertices = 12;
inline constexpr std::size_t kInterConnectionMaxVertices = 10;

/// Subset dynamic programme over all 2^n vertex sets, O(3^n k).
/// Throws CapacityError for n > 12 and InputError unless 2 <= k <= n.
PartitionConstants bruteforce_partition_constants(const Graph& g, int k);

struct InterConnection {
  int k = 0;
  double rho_k = 0.0;
  std::size_t optimal_tuples = 0;         // |Z_k|
  std::size_t compatible_partitions = 0;  // pairs (Z, P) examined
  /// Some compatible partition already has max phi <= rho(k): the constant
  /// is not defined for this graph and the fields below are unset.
  bool degenerate = false;
  double rho_p = 0.0;
  double kappa = 0.0;            // 1 / (1 - rho_p), infinity if rho_p >= 1
  double rho_tilde_avr = 0.0;    // average phi of the witness
  std::optional<Partition> witness;        // P attaining rho_p, smallest average phi
  std::optional<Partition> witness_tuple;  // the optimal tuple it is compatible with
};

/// Enumerates every optimal tuple Z (max phi(Z_i) == rho(k) up to 1e-12) and
/// every partition P with Z_i subset of P_i, and minimises
///   max_{S_i != empty} (|E(S_i, V \ P_i)| - |E(S_i, Z_i)|) / |E(P_i, V \ P_i)|
/// with S_i = P_i \ Z_i. Blocks with no boundary edges are skipped in the
/// max. Throws CapacityError for n > 10.
InterConnection inter_connection(const Graph& g, int k);

}  // namespace spectral_part
