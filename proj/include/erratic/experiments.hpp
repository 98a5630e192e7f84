#pragma once

// Monte Carlo harness: convergence sweeps, post-gathering span and centroid
// statistics, and validation of the single-walker closed forms.
//
// Seeding: grid point g uses base = derive_seed(seed, "grid", g); trial i of
// that point draws its initial placement from derive_seed(base, "placement", i)
// and its dynamics from derive_seed(base, "dynamics", i). Results are stored
// by trial index before aggregation, so the thread count never changes the
// output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erratic/rng.hpp"
#include "erratic/stats.hpp"

namespace erratic {

enum class ExperimentKind {
  convergence_vs_epsilon,
  convergence_vs_s0,
  convergence_vs_n,
  span_distribution,
  centroid_drift,
  walk_validation,
};

const char* to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(const std::string& name);
bool is_convergence(ExperimentKind kind) noexcept;

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::convergence_vs_epsilon;
  std::vector<double> epsilons = {0.1};
  std::vector<long long> ns = {100};
  std::vector<double> s0s = {100.0};
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t warmup = 10'000;     // ticks discarded after gathering
  std::uint64_t samples = 1'000'000; // span samples, drift ticks, or chain samples (total)
  std::uint64_t stride = 10;         // ticks between span samples
  std::uint64_t msd_lag = 1'000;     // window length for the centroid MSD
  std::vector<long long> exit_floors = {10, 50};
  std::uint64_t chain_burn_in = 10'000;
  unsigned threads = 1;              // 0 = hardware concurrency

  /// Throws ValidationError / DomainError on an unusable spec.
  void validate() const;
};

/// n i.i.d. uniform points on [0, s0 + 3] (an inner interval of length
/// 1 + s0 plus two unit end gaps), sorted, redrawn until all fractional parts
/// are distinct.
std::vector<double> uniform_placement(std::size_t n, double s0, Rng& rng);

struct ConvergencePoint {
  double epsilon = 0.0;
  long long n = 0;
  double s0 = 0.0;  // nominal
  Summary time;     // gathering time T over trials
  Summary bound;    // per-trial theoretical bound, evaluated on the realized start
  double ratio = 0.0;  // mean bound / mean T
  std::uint64_t unreached = 0;        // trials that hit max_steps
  std::uint64_t bound_exceeded = 0;   // trials with T above their own bound (soft diagnostic)
  std::uint64_t invariant_violations = 0;
  std::vector<double> trial_times;
  std::vector<double> trial_bounds;
};

struct SpanBin {
  long long k = 0;
  std::uint64_t count = 0;       // samples with floor(span) == k
  std::uint64_t tail_count = 0;  // samples with span >= k
  double empirical_p = 0.0;      // P(span >= k)
  double stderr_ = 0.0;          // batch means
  double bound_p = 1.0;          // P(X + Y >= k); 1 for k < 2
  double markov_p = 1.0;         // crude Markov bound
};

struct SpanDistribution {
  double epsilon = 0.0;
  long long n = 0;
  std::uint64_t samples = 0;
  std::vector<SpanBin> bins;     // k = 0, 1, ... up to the largest observed
  Summary span;                  // mean total span; stderr from batch means
  double mean_span_bound = 0.0;  // 1 + 2 eps / (1 - 2 eps)
  double slope = 0.0;            // least-squares slope of ln P(span >= k)
  int slope_points = 0;
  std::uint64_t invariant_violations = 0;
};

struct DriftStats {
  double epsilon = 0.0;
  long long n = 0;
  std::uint64_t ticks = 0;
  std::uint64_t plus = 0;   // centroid increments of +2/N
  std::uint64_t zero = 0;
  std::uint64_t minus = 0;  // -2/N
  double expected_side = 0.0;  // eps (1 - eps)
  double msd_slope = 0.0;      // core-centre mean squared displacement per tick
  double msd_slope_stderr = 0.0;
  double expected_msd_slope = 0.0;  // 8 eps (1 - eps) / N^2
  std::uint64_t invariant_violations = 0;
};

struct ExitCheck {
  long long floor = 0;   // lower barrier is -floor, upper barrier +1
  double oracle = 0.0;   // exact probability of reaching +1 first
  Summary simulated;
};

struct WalkValidation {
  double epsilon = 0.0;
  Summary steps;
  double expected_steps = 0.0;
  Summary excursion;
  double excursion_bound = 0.0;
  std::vector<ExitCheck> exits;
  double chain_tv = 0.0;   // over states 1..30
  double chain_mean = 0.0;
  double chain_mean_stderr = 0.0;
  double stationary_mean = 0.0;
  std::uint64_t chain_samples = 0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ConvergencePoint> convergence;
  std::vector<SpanDistribution> spans;
  std::vector<DriftStats> drift;
  std::vector<WalkValidation> walks;
  std::vector<std::string> diagnostics;
  bool incomplete = false;
};

/// Fit range and support threshold for the span-tail slope.
inline constexpr long long kSlopeMinK = 3;
inline constexpr long long kSlopeMaxK = 12;
inline constexpr std::uint64_t kSlopeMinCount = 10;

ExperimentResult run_convergence_sweep(const ExperimentSpec& spec);
ExperimentResult run_span_distribution(const ExperimentSpec& spec);
ExperimentResult run_centroid_drift(const ExperimentSpec& spec);
ExperimentResult run_walk_validation(const ExperimentSpec& spec);

/// Dispatches on spec.kind.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace erratic
