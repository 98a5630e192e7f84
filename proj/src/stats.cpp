#include "erratic/stats.hpp"

#include <cmath>
#include <vector>

#include "erratic/error.hpp"

namespace erratic {

void RunningStats::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

Summary RunningStats::summary() const noexcept {
  Summary s;
  s.count = n_;
  s.mean = mean_;
  if (n_ >= 2) {
    s.variance = m2_ / static_cast<double>(n_ - 1);
    s.stddev = std::sqrt(s.variance);
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(n_));
  }
  return s;
}

Summary summarize(std::span<const double> xs) noexcept {
  RunningStats acc;
  for (double x : xs) acc.add(x);
  return acc.summary();
}

double batch_means_stderr(std::span<const double> xs, std::size_t batches) {
  if (batches < 2) throw ValidationError("batch means need at least two batches");
  const std::size_t per = xs.size() / batches;
  if (per == 0) throw ValidationError("fewer samples than batches");
  RunningStats means;
  for (std::size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < per; ++i) sum += xs[b * per + i];
    means.add(sum / static_cast<double>(per));
  }
  return means.summary().stderr_;
}

}  // namespace erratic
