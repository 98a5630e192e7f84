#include "erratic/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "erratic/analytics.hpp"
#include "erratic/error.hpp"
#include "erratic/swarm1d.hpp"
#include "erratic/walks.hpp"
#include "parallel.hpp"

namespace erratic {

namespace {

struct GridPoint {
  double epsilon;
  long long n;
  double s0;
};

std::vector<GridPoint> grid_of(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  for (double eps : spec.epsilons)
    for (long long n : spec.ns)
      for (double s0 : spec.s0s) grid.push_back({eps, n, s0});
  return grid;
}

std::uint64_t grid_seed(const ExperimentSpec& spec, std::size_t g) {
  return derive_seed(spec.seed, "grid", g);
}

// Per-trial share of a total sample budget; the last trial takes the remainder.
std::uint64_t share(std::uint64_t total, std::uint64_t trials, std::uint64_t i) {
  const std::uint64_t base = total / trials;
  return i + 1 == trials ? total - base * (trials - 1) : base;
}

// Places and gathers one swarm. Returns nullopt if max_steps ran out.
std::optional<GatheringResult> gathered_swarm(const ExperimentSpec& spec, const GridPoint& point,
                                              std::uint64_t base, std::uint64_t trial) {
  Rng placement(derive_seed(base, "placement", trial));
  Swarm1D swarm(uniform_placement(static_cast<std::size_t>(point.n), point.s0, placement),
                point.epsilon, derive_seed(base, "dynamics", trial));
  GatheringResult gathered = run_until_gathered(std::move(swarm), spec.max_steps);
  if (!gathered.reached) return std::nullopt;
  return gathered;
}

std::string describe(const GridPoint& point) {
  return "eps=" + std::to_string(point.epsilon) + " N=" + std::to_string(point.n) +
         " S0=" + std::to_string(point.s0);
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::convergence_vs_epsilon: return "convergence-vs-epsilon";
    case ExperimentKind::convergence_vs_s0: return "convergence-vs-S0";
    case ExperimentKind::convergence_vs_n: return "convergence-vs-N";
    case ExperimentKind::span_distribution: return "span-distribution";
    case ExperimentKind::centroid_drift: return "centroid-drift";
    case ExperimentKind::walk_validation: return "walk-validation";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto kind : {ExperimentKind::convergence_vs_epsilon, ExperimentKind::convergence_vs_s0,
                    ExperimentKind::convergence_vs_n, ExperimentKind::span_distribution,
                    ExperimentKind::centroid_drift, ExperimentKind::walk_validation}) {
    if (name == to_string(kind)) return kind;
  }
  throw ValidationError("unknown experiment kind '" + name + "'");
}

bool is_convergence(ExperimentKind kind) noexcept {
  return kind == ExperimentKind::convergence_vs_epsilon || kind == ExperimentKind::convergence_vs_s0 ||
         kind == ExperimentKind::convergence_vs_n;
}

void ExperimentSpec::validate() const {
  if (trials < 2) throw ValidationError("trials must be >= 2 so standard errors exist");
  if (epsilons.empty()) throw ValidationError("epsilon grid is empty");
  for (double eps : epsilons) WalkParams{eps};
  if (kind == ExperimentKind::walk_validation) {
    for (long long m : exit_floors) {
      if (m < 1) throw ValidationError("exit floors must be >= 1");
    }
    if (samples == 0) throw ValidationError("samples must be >= 1");
    return;
  }
  if (ns.empty() || s0s.empty()) throw ValidationError("N and S0 grids must be non-empty");
  for (long long n : ns) {
    if (n < 4) throw ValidationError("gathering experiments need N >= 4");
  }
  for (double s0 : s0s) {
    if (!(s0 > 0.0) || !std::isfinite(s0)) throw ValidationError("S0 must be positive");
  }
  if (max_steps == 0) throw ValidationError("max_steps must be >= 1");
  if (kind == ExperimentKind::span_distribution) {
    if (stride == 0) throw ValidationError("stride must be >= 1");
    if (samples < 200) throw ValidationError("span distribution needs >= 200 samples");
  }
  if (kind == ExperimentKind::centroid_drift) {
    for (double eps : epsilons) {
      if (eps == 0.0) throw ValidationError("centroid drift is defined for epsilon > 0 only");
    }
    if (msd_lag == 0) throw ValidationError("msd_lag must be >= 1");
    if (samples / trials < 2 * msd_lag) {
      throw ValidationError("each drift trial needs at least two MSD windows");
    }
  }
}

std::vector<double> uniform_placement(std::size_t n, double s0, Rng& rng) {
  std::vector<double> xs(n);
  for (;;) {
    for (double& x : xs) x = rng.uniform(0.0, s0 + 3.0);
    std::sort(xs.begin(), xs.end());
    if (n < 2) return xs;
    std::vector<double> frac;
    frac.reserve(n);
    for (double x : xs) frac.push_back(x - std::floor(x));
    std::sort(frac.begin(), frac.end());
    if (std::adjacent_find(frac.begin(), frac.end()) == frac.end()) return xs;
  }
}

ExperimentResult run_convergence_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (!is_convergence(spec.kind)) throw ValidationError("not a convergence experiment");
  ExperimentResult result;
  result.spec = spec;
  const auto grid = grid_of(spec);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint& point = grid[g];
    const std::uint64_t base = grid_seed(spec, g);
    const WalkParams p(point.epsilon);

    struct Trial {
      double time = 0.0;
      double bound = 0.0;
      bool reached = false;
      std::uint64_t violations = 0;
    };
    std::vector<Trial> trials(spec.trials);
    detail::parallel_for(trials.size(), spec.threads, [&](std::size_t i) {
      Rng placement(derive_seed(base, "placement", i));
      Swarm1D swarm(uniform_placement(static_cast<std::size_t>(point.n), point.s0, placement),
                    point.epsilon, derive_seed(base, "dynamics", i));
      const GatheringBound bound = gathering_time_bound(swarm.positions(), p);
      const GatheringResult run = run_until_gathered(std::move(swarm), spec.max_steps);
      trials[i] = {static_cast<double>(run.T), bound.steps, run.reached, run.invariants.violations};
    });

    ConvergencePoint out;
    out.epsilon = point.epsilon;
    out.n = point.n;
    out.s0 = point.s0;
    RunningStats times;
    RunningStats bounds;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const Trial& t = trials[i];
      times.add(t.time);
      bounds.add(t.bound);
      out.trial_times.push_back(t.time);
      out.trial_bounds.push_back(t.bound);
      out.invariant_violations += t.violations;
      if (!t.reached) ++out.unreached;
      if (t.time > t.bound) {
        ++out.bound_exceeded;
        result.diagnostics.push_back(describe(point) + " trial " + std::to_string(i) +
                                     ": T=" + std::to_string(t.time) +
                                     " exceeds its expectation bound " + std::to_string(t.bound));
      }
    }
    out.time = times.summary();
    out.bound = bounds.summary();
    out.ratio = out.time.mean > 0.0 ? out.bound.mean / out.time.mean : 0.0;
    if (out.unreached > 0) {
      result.incomplete = true;
      result.diagnostics.push_back(describe(point) + ": " + std::to_string(out.unreached) +
                                   " trials exhausted max_steps; point incomplete");
    }
    if (out.invariant_violations > 0) {
      result.diagnostics.push_back(describe(point) + ": invariant violations during gathering");
    }
    result.convergence.push_back(std::move(out));
  }
  return result;
}

ExperimentResult run_span_distribution(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  const auto grid = grid_of(spec);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint& point = grid[g];
    const std::uint64_t base = grid_seed(spec, g);
    const WalkParams p(point.epsilon);

    struct Trial {
      std::vector<double> spans;
      std::vector<std::int64_t> floors;  // exact floor(span)
      std::uint64_t violations = 0;
      bool gathered = false;
    };
    std::vector<Trial> trials(spec.trials);
    detail::parallel_for(trials.size(), spec.threads, [&](std::size_t i) {
      auto gathered = gathered_swarm(spec, point, base, i);
      if (!gathered) return;
      Trial& trial = trials[i];
      trial.gathered = true;
      Swarm1D swarm = std::move(gathered->final_state);
      auto ignore = [](const Swarm1D&, const StepOutcome&) {};
      trial.violations += advance_gathered(swarm, spec.warmup, ignore).violations;
      const std::uint64_t count = share(spec.samples, spec.trials, i);
      trial.spans.reserve(count);
      trial.floors.reserve(count);
      for (std::uint64_t s = 0; s < count; ++s) {
        trial.violations += advance_gathered(swarm, spec.stride, ignore).violations;
        trial.spans.push_back(swarm.total_span());
        trial.floors.push_back(swarm.total_span_floor());
      }
    });

    std::vector<double> spans;
    std::vector<std::int64_t> floors;
    SpanDistribution out;
    out.epsilon = point.epsilon;
    out.n = point.n;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      if (!trials[i].gathered) {
        result.incomplete = true;
        result.diagnostics.push_back(describe(point) + " trial " + std::to_string(i) +
                                     ": sampling rejected, swarm did not gather within max_steps");
        continue;
      }
      out.invariant_violations += trials[i].violations;
      spans.insert(spans.end(), trials[i].spans.begin(), trials[i].spans.end());
      floors.insert(floors.end(), trials[i].floors.begin(), trials[i].floors.end());
    }
    out.samples = spans.size();
    out.mean_span_bound = 1.0 + 2.0 * farthest_excursion_bound(p);
    if (spans.size() < 200) {
      result.incomplete = true;
      result.diagnostics.push_back(describe(point) + ": too few samples for batch means");
      result.spans.push_back(std::move(out));
      continue;
    }
    out.span = summarize(spans);
    out.span.stderr_ = batch_means_stderr(spans, 100);

    // Bin k holds floor(span) == k. Per-batch histograms give batch-means
    // standard errors for every tail probability.
    constexpr std::size_t batches = 100;
    const std::size_t per_batch = spans.size() / batches;
    long long max_bin = kSlopeMaxK;
    for (std::int64_t f : floors) max_bin = std::max(max_bin, static_cast<long long>(f) + 1);
    const auto bins = static_cast<std::size_t>(max_bin + 1);
    std::vector<std::uint64_t> counts(bins, 0);
    std::vector<std::vector<std::uint64_t>> batch_counts(batches, std::vector<std::uint64_t>(bins, 0));
    for (std::size_t s = 0; s < spans.size(); ++s) {
      const auto k = static_cast<std::size_t>(floors[s]);
      ++counts[k];
      if (s / per_batch < batches) ++batch_counts[s / per_batch][k];
    }
    std::vector<std::uint64_t> batch_tail(batches, 0);
    std::uint64_t tail = 0;
    out.bins.resize(bins);
    for (std::size_t k = bins; k-- > 0;) {
      tail += counts[k];
      RunningStats batch_means;
      for (std::size_t b = 0; b < batches; ++b) {
        batch_tail[b] += batch_counts[b][k];
        batch_means.add(static_cast<double>(batch_tail[b]) / static_cast<double>(per_batch));
      }
      SpanBin& bin = out.bins[k];
      bin.k = static_cast<long long>(k);
      bin.count = counts[k];
      bin.tail_count = tail;
      bin.empirical_p = static_cast<double>(tail) / static_cast<double>(spans.size());
      bin.stderr_ = batch_means.summary().stderr_;
      bin.bound_p = k >= 2 ? tail_prob_sum(p, bin.k) : 1.0;
      bin.markov_p = k >= 1 ? markov_span_bound(p, static_cast<double>(k)) : 1.0;
    }

    // Least-squares slope of ln P(span >= k) on k over the supported range.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (long long k = kSlopeMinK; k <= kSlopeMaxK && k < max_bin + 1; ++k) {
      const SpanBin& bin = out.bins[static_cast<std::size_t>(k)];
      if (bin.tail_count < kSlopeMinCount) continue;
      const double y = std::log(bin.empirical_p);
      const double x = static_cast<double>(k);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    out.slope_points = m;
    out.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::nan("");
    if (out.invariant_violations > 0) {
      result.diagnostics.push_back(describe(point) + ": core span exceeded 1 after gathering");
    }
    result.spans.push_back(std::move(out));
  }
  return result;
}

ExperimentResult run_centroid_drift(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  const auto grid = grid_of(spec);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint& point = grid[g];
    const std::uint64_t base = grid_seed(spec, g);

    struct Trial {
      std::uint64_t plus = 0, zero = 0, minus = 0, violations = 0;
      std::vector<double> squared_displacements;  // per MSD window, divided by the lag
      bool gathered = false;
    };
    std::vector<Trial> trials(spec.trials);
    detail::parallel_for(trials.size(), spec.threads, [&](std::size_t i) {
      auto gathered = gathered_swarm(spec, point, base, i);
      if (!gathered) return;
      Trial& trial = trials[i];
      trial.gathered = true;
      Swarm1D swarm = std::move(gathered->final_state);
      trial.violations +=
          advance_gathered(swarm, spec.warmup, [](const Swarm1D&, const StepOutcome&) {}).violations;

      auto core_center = [](const Swarm1D& s) {
        const auto xs = s.positions();
        double sum = 0.0;
        for (std::size_t j = 1; j + 1 < xs.size(); ++j) sum += xs[j];
        return sum / static_cast<double>(xs.size() - 2);
      };
      const std::uint64_t ticks = share(spec.samples, spec.trials, i);
      double window_start = core_center(swarm);
      std::uint64_t elapsed = 0;
      trial.violations +=
          advance_gathered(swarm, ticks, [&](const Swarm1D& s, const StepOutcome& step) {
            const int net = step.net_displacement();
            if (net > 0) {
              ++trial.plus;
            } else if (net < 0) {
              ++trial.minus;
            } else {
              ++trial.zero;
            }
            if (++elapsed % spec.msd_lag == 0) {
              const double c = core_center(s);
              trial.squared_displacements.push_back((c - window_start) * (c - window_start) /
                                                    static_cast<double>(spec.msd_lag));
              window_start = c;
            }
          }).violations;
    });

    DriftStats out;
    out.epsilon = point.epsilon;
    out.n = point.n;
    out.expected_side = point.epsilon * (1.0 - point.epsilon);
    out.expected_msd_slope =
        8.0 * out.expected_side / (static_cast<double>(point.n) * static_cast<double>(point.n));
    RunningStats msd;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const Trial& t = trials[i];
      if (!t.gathered) {
        result.incomplete = true;
        result.diagnostics.push_back(describe(point) + " trial " + std::to_string(i) +
                                     ": swarm did not gather within max_steps");
        continue;
      }
      out.plus += t.plus;
      out.zero += t.zero;
      out.minus += t.minus;
      out.invariant_violations += t.violations;
      for (double v : t.squared_displacements) msd.add(v);
    }
    out.ticks = out.plus + out.zero + out.minus;
    const Summary s = msd.summary();
    out.msd_slope = s.mean;
    out.msd_slope_stderr = s.stderr_;
    if (out.invariant_violations > 0) {
      result.diagnostics.push_back(describe(point) + ": core span exceeded 1 after gathering");
    }
    result.drift.push_back(out);
  }
  return result;
}

ExperimentResult run_walk_validation(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  for (std::size_t g = 0; g < spec.epsilons.size(); ++g) {
    const WalkParams p(spec.epsilons[g]);
    const std::uint64_t base = grid_seed(spec, g);
    WalkValidation out;
    out.epsilon = p.epsilon();

    const FirstPassageStats fp =
        simulate_walk_first_passage(p, derive_seed(base, "first-passage", 0), spec.trials);
    out.steps = fp.steps;
    out.expected_steps = expected_steps_to_minus_one(p);
    out.excursion = fp.excursion;
    out.excursion_bound = farthest_excursion_bound(p);

    for (long long floor : spec.exit_floors) {
      ExitCheck check;
      check.floor = floor;
      check.oracle = finite_chain_oracle(p, 1, -floor).p_right;
      check.simulated = simulate_exit_probability(
          p, derive_seed(base, "exit", static_cast<std::uint64_t>(floor)), spec.trials, 1, -floor);
      out.exits.push_back(check);
    }

    const ChainOccupancy chain = simulate_reflected_chain(p, derive_seed(base, "chain", 0),
                                                          spec.chain_burn_in, spec.samples);
    out.chain_tv = total_variation_to_stationary(chain, p, 30);
    out.chain_mean = chain.mean;
    out.chain_mean_stderr = chain.mean_stderr;
    out.stationary_mean = stationary_mean_series(p);
    out.chain_samples = chain.samples;
    result.walks.push_back(std::move(out));
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::convergence_vs_epsilon:
    case ExperimentKind::convergence_vs_s0:
    case ExperimentKind::convergence_vs_n: return run_convergence_sweep(spec);
    case ExperimentKind::span_distribution: return run_span_distribution(spec);
    case ExperimentKind::centroid_drift: return run_centroid_drift(spec);
    case ExperimentKind::walk_validation: return run_walk_validation(spec);
  }
  throw ValidationError("unknown experiment kind");
}

}  // namespace erratic
