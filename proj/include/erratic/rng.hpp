#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace erratic {

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a given seed produces the same stream on every conforming
/// platform. Uniform variates are built from the top 53 bits of each draw
/// instead of std::uniform_real_distribution, whose algorithm is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// True with probability p.
  bool bernoulli(double p) { return uniform01() < p; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a hash of a purpose tag, used to separate sub-seed families.
std::uint64_t purpose_hash(std::string_view purpose) noexcept;

/// Sub-seed for (seed, purpose, index):
///   mix64(mix64(seed ^ purpose_hash(purpose)) + index).
/// Every random stream in the project is derived through this function so a
/// single top-level seed reproduces a whole run.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose, std::uint64_t index) noexcept;

}  // namespace erratic
