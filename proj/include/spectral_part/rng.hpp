#pragma once

#include <cstdint>

namespace spectral_part {

/// Purpose tags for RNG sub-streams. Every consumer of randomness draws from
/// its own (seed, purpose, substream) triple so experiments replay exactly.
enum class StreamPurpose : std::uint64_t {
  ring_bridges = 1,
  sbm_edges = 2,
  sbm_repair = 3,
  gaussian_sketch = 4,
  kmeans_seeding = 5,
  kmeans_restart = 6,
  test_data = 100,
};

/// Counter-based generator. Output i of a stream is
///
///   mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
///
/// where mix64 is the SplitMix64 finalizer and the key is derived from
/// (seed, purpose, substream) by two further mix64 rounds. Any output can be
/// computed directly from its index, so results never depend on call order
/// or on how work is split across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t substream = 0);

  std::uint64_t at(std::uint64_t counter) const noexcept;
  std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform double in the open interval (0, 1) built from the top 53 bits.
  double uniform() noexcept { return to_unit(next()); }
  double uniform_at(std::uint64_t counter) const noexcept { return to_unit(at(counter)); }

  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal for index i: Box-Muller cosine branch over the uniform
  /// pair at counters (2i, 2i+1). Independent of the sequential counter.
  double normal_at(std::uint64_t index) const noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix64(std::uint64_t x) noexcept;

 private:
  static double to_unit(std::uint64_t x) noexcept {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace spectral_part
