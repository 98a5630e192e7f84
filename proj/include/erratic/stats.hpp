#pragma once

#include <cstdint>
#include <span>

namespace erratic {

struct Summary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1); 0 when count < 2
  double stddev = 0.0;
  double stderr_ = 0.0;   // stddev / sqrt(count)
};

/// Welford accumulator. Results depend on insertion order only through
/// rounding; callers that need reproducible output feed samples in a fixed
/// order (trial index).
class RunningStats {
 public:
  void add(double x) noexcept;
  Summary summary() const noexcept;
  std::uint64_t count() const noexcept { return n_; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

Summary summarize(std::span<const double> xs) noexcept;

/// Batch-means standard error of the mean for an autocorrelated series:
/// split into `batches` contiguous equal batches (remainder dropped) and
/// return stddev(batch means) / sqrt(batches).
double batch_means_stderr(std::span<const double> xs, std::size_t batches = 100);

}  // namespace erratic
