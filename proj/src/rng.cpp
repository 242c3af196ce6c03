#include "spectral_part/rng.hpp"

#include <cmath>
#include <numbers>

#include "spectral_part/errors.hpp"

namespace spectral_part {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::gap: return "gap";
  }
  return "unknown";
}

std::uint64_t CounterRng::mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t substream) {
  const auto tag = static_cast<std::uint64_t>(purpose);
  key_ = mix64(mix64(seed + kGolden) ^ mix64(tag * 0xD1B54A32D192ED03ULL + substream));
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
  return mix64(key_ + (counter + 1) * kGolden);
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  if (bound <= 1) return 0;
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double CounterRng::normal_at(std::uint64_t index) const noexcept {
  const double u1 = uniform_at(2 * index);
  const double u2 = uniform_at(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace spectral_part
