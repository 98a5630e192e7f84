#include "erratic/erratic.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "erratic/analytics.hpp"
#include "erratic/config.hpp"
#include "erratic/error.hpp"
#include "erratic/experiments.hpp"
#include "erratic/results_io.hpp"
#include "erratic/swarm1d.hpp"
#include "erratic/swarm2d.hpp"
#include "erratic/walks.hpp"

struct erratic_swarm1d {
  erratic::Swarm1D swarm;
};

struct erratic_swarm2d {
  erratic::Swarm2D swarm;
};

namespace {

thread_local std::string last_error;

struct NullArgument {};

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw NullArgument{};
}

template <class Fn>
erratic_status guarded(Fn&& fn) {
  try {
    fn();
    return ERRATIC_OK;
  } catch (const NullArgument&) {
    last_error = "null pointer argument";
    return ERRATIC_INVALID_ARGUMENT;
  } catch (const erratic::Error& e) {
    last_error = e.what();
    return static_cast<erratic_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ERRATIC_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ERRATIC_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return ERRATIC_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

erratic_summary to_c(const erratic::Summary& s) {
  return {s.count, s.mean, s.variance, s.stddev, s.stderr_};
}

erratic::Mode to_mode(erratic_mode mode) {
  switch (mode) {
    case ERRATIC_BILATERAL: return erratic::Mode::bilateral;
    case ERRATIC_UNILATERAL_RIGHT: return erratic::Mode::unilateral_right;
    case ERRATIC_UNILATERAL_LEFT: return erratic::Mode::unilateral_left;
  }
  throw erratic::ValidationError("unknown swarm mode");
}

std::span<const double> view(const double* data, std::size_t n) {
  if (n > 0) require(data);
  return {data, n};
}

template <class Fn>
erratic_status scalar(double* out, Fn&& fn) {
  return guarded([&] {
    require(out);
    *out = fn();
  });
}

class CallbackSink final : public erratic::TrajectorySink {
 public:
  CallbackSink(erratic_row1d_fn fn, void* user) : fn_(fn), user_(user) {}
  void on_row(const erratic::TrajectoryRow& r) override {
    const erratic_row1d row{r.t, r.centroid, r.core_span, r.total_span, r.x_first, r.x_last};
    fn_(&row, user_);
  }

 private:
  erratic_row1d_fn fn_;
  void* user_;
};

nlohmann::json run_and_write(const erratic::RunConfig& config, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw erratic::IoError("output directory '" + dir.string() + "' does not exist");
  }
  const auto start = std::chrono::steady_clock::now();
  const erratic::ExperimentResult result = erratic::run_experiment(config.spec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json files = nlohmann::json::array();
  for (const std::string& format : config.formats) {
    const bool csv = format == "csv";
    const fs::path path = dir / (csv ? "results.csv" : "results.jsonl");
    erratic::write_results(result, csv ? erratic::ResultFormat::csv : erratic::ResultFormat::json_lines,
                           path.string());
    files.push_back(path.filename().string());
  }
  if (!result.spans.empty()) {
    const fs::path path = dir / "histogram.csv";
    erratic::write_histogram(result, path.string());
    files.push_back(path.filename().string());
  }

  nlohmann::json manifest;
  manifest["version"] = erratic_version();
  manifest["seed"] = config.spec.seed;
  manifest["config"] = nlohmann::json::parse(erratic::config_to_json(config));
  manifest["wall_time_seconds"] = wall;
  manifest["files"] = files;
  manifest["incomplete"] = result.incomplete;
  manifest["diagnostics"] = result.diagnostics;
  erratic::write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  nlohmann::json summary;
  summary["incomplete"] = result.incomplete;
  summary["diagnostics"] = result.diagnostics;
  summary["files"] = files;
  summary["rows"] = erratic::result_rows(result).size();
  return summary;
}

}  // namespace

extern "C" {

const char* erratic_version(void) { return "0.1.0"; }

const char* erratic_last_error(void) { return last_error.c_str(); }

const char* erratic_status_string(erratic_status status) {
  switch (status) {
    case ERRATIC_OK: return "ok";
    case ERRATIC_DOMAIN: return "domain error";
    case ERRATIC_VALIDATION: return "validation error";
    case ERRATIC_DEGENERATE: return "degenerate input";
    case ERRATIC_OVERFLOW: return "overflow";
    case ERRATIC_IO: return "I/O error";
    case ERRATIC_INVARIANT: return "invariant violation";
    case ERRATIC_INVALID_ARGUMENT: return "invalid argument";
    case ERRATIC_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void erratic_string_free(char* s) { std::free(s); }

erratic_status erratic_catalan(unsigned k, uint64_t* out) {
  return guarded([&] {
    require(out);
    *out = erratic::catalan(k);
  });
}

erratic_status erratic_hit_minus_one_series(double epsilon, unsigned terms, double* out) {
  return scalar(out, [&] { return erratic::hit_minus_one_series(erratic::WalkParams(epsilon), terms); });
}

erratic_status erratic_prob_hit_minus_one(double epsilon, double* out) {
  return scalar(out, [&] { return erratic::prob_hit_minus_one(erratic::WalkParams(epsilon)); });
}

erratic_status erratic_prob_hit_plus_one(double epsilon, double* out) {
  return scalar(out, [&] { return erratic::prob_hit_plus_one(erratic::WalkParams(epsilon)); });
}

erratic_status erratic_expected_steps_to_minus_one(double epsilon, double* out) {
  return scalar(out, [&] { return erratic::expected_steps_to_minus_one(erratic::WalkParams(epsilon)); });
}

erratic_status erratic_farthest_excursion_bound(double epsilon, double* out) {
  return scalar(out, [&] { return erratic::farthest_excursion_bound(erratic::WalkParams(epsilon)); });
}

erratic_status erratic_stationary_pi(double epsilon, long long k, double* out) {
  return scalar(out, [&] { return erratic::stationary_pi(erratic::WalkParams(epsilon), k); });
}

erratic_status erratic_stationary_mean(double epsilon, double* out) {
  return scalar(out, [&] { return erratic::stationary_mean_series(erratic::WalkParams(epsilon)); });
}

erratic_status erratic_tail_prob_single(double epsilon, long long k, double* out) {
  return scalar(out, [&] { return erratic::tail_prob_single(erratic::WalkParams(epsilon), k); });
}

erratic_status erratic_tail_prob_sum(double epsilon, long long k, double* out) {
  return scalar(out, [&] { return erratic::tail_prob_sum(erratic::WalkParams(epsilon), k); });
}

erratic_status erratic_markov_span_bound(double epsilon, double k, double* out) {
  return scalar(out, [&] { return erratic::markov_span_bound(erratic::WalkParams(epsilon), k); });
}

erratic_status erratic_gathering_bound_unilateral(const double* positions, size_t n, double epsilon,
                                                  double* out) {
  return scalar(out, [&] {
    return erratic::gathering_bound_unilateral(view(positions, n), erratic::WalkParams(epsilon));
  });
}

erratic_status erratic_half_shrink_bound(long long n, double s0, double total_span0, double epsilon,
                                         double* out) {
  return scalar(out, [&] {
    return erratic::half_shrink_bound(n, s0, total_span0, erratic::WalkParams(epsilon));
  });
}

erratic_status erratic_min_fractional_distance(const double* positions, size_t n, double* out) {
  return scalar(out, [&] { return erratic::min_fractional_distance(view(positions, n)); });
}

erratic_status erratic_gathering_time_bound(const double* positions, size_t n, double epsilon,
                                            double* out, int* already_gathered) {
  return guarded([&] {
    require(out);
    const erratic::GatheringBound b =
        erratic::gathering_time_bound(view(positions, n), erratic::WalkParams(epsilon));
    *out = b.steps;
    if (already_gathered) *already_gathered = b.already_gathered ? 1 : 0;
  });
}

erratic_status erratic_finite_chain_oracle(double epsilon, long long right_barrier,
                                           long long left_target, erratic_absorption* out) {
  return guarded([&] {
    require(out);
    const auto r = erratic::finite_chain_oracle(erratic::WalkParams(epsilon), right_barrier, left_target);
    *out = {r.p_left, r.p_right, r.expected_time};
  });
}

erratic_status erratic_walk_first_passage(double epsilon, uint64_t seed, uint64_t trials,
                                          erratic_summary* steps, erratic_summary* excursion) {
  return guarded([&] {
    const auto r = erratic::simulate_walk_first_passage(erratic::WalkParams(epsilon), seed, trials);
    if (steps) *steps = to_c(r.steps);
    if (excursion) *excursion = to_c(r.excursion);
  });
}

erratic_status erratic_walk_exit_probability(double epsilon, uint64_t seed, uint64_t trials,
                                             long long upper, long long lower, erratic_summary* out) {
  return guarded([&] {
    require(out);
    *out = to_c(erratic::simulate_exit_probability(erratic::WalkParams(epsilon), seed, trials, upper, lower));
  });
}

erratic_status erratic_reflected_chain(double epsilon, uint64_t seed, uint64_t burn_in,
                                       uint64_t samples, double* occupancy, size_t max_state,
                                       double* total_variation, double* mean, double* mean_stderr) {
  return guarded([&] {
    if (max_state > 0) require(occupancy);
    const erratic::WalkParams p(epsilon);
    const auto chain = erratic::simulate_reflected_chain(p, seed, burn_in, samples);
    for (size_t j = 0; j < max_state; ++j) {
      occupancy[j] = j < chain.occupancy.size() ? chain.occupancy[j] : 0.0;
    }
    if (total_variation) {
      *total_variation = erratic::total_variation_to_stationary(
          chain, p, static_cast<long long>(max_state > 0 ? max_state : 30));
    }
    if (mean) *mean = chain.mean;
    if (mean_stderr) *mean_stderr = chain.mean_stderr;
  });
}

erratic_status erratic_swarm1d_create(const double* positions, size_t n, double epsilon,
                                      uint64_t seed, erratic_mode mode, erratic_swarm1d** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    const auto xs = view(positions, n);
    *out = new erratic_swarm1d{
        erratic::Swarm1D(std::vector<double>(xs.begin(), xs.end()), epsilon, seed, to_mode(mode))};
  });
}

void erratic_swarm1d_destroy(erratic_swarm1d* swarm) { delete swarm; }

erratic_status erratic_swarm1d_clone(const erratic_swarm1d* swarm, erratic_swarm1d** out) {
  return guarded([&] {
    require(swarm, out);
    *out = new erratic_swarm1d{swarm->swarm};
  });
}

size_t erratic_swarm1d_size(const erratic_swarm1d* swarm) { return swarm ? swarm->swarm.size() : 0; }

uint64_t erratic_swarm1d_time(const erratic_swarm1d* swarm) { return swarm ? swarm->swarm.time() : 0; }

int erratic_swarm1d_coincident(const erratic_swarm1d* swarm) {
  return swarm && swarm->swarm.coincident() ? 1 : 0;
}

erratic_status erratic_swarm1d_positions(const erratic_swarm1d* swarm, double* out, size_t n) {
  return guarded([&] {
    require(swarm);
    if (n > 0) require(out);
    const auto xs = swarm->swarm.positions();
    std::copy_n(xs.begin(), std::min(n, xs.size()), out);
  });
}

erratic_status erratic_swarm1d_step(erratic_swarm1d* swarm, uint64_t steps) {
  return guarded([&] {
    require(swarm);
    for (uint64_t i = 0; i < steps; ++i) swarm->swarm.step();
  });
}

erratic_status erratic_swarm1d_metrics(const erratic_swarm1d* swarm, erratic_metrics1d* out) {
  return guarded([&] {
    require(swarm, out);
    const erratic::Metrics m = swarm->swarm.metrics();
    *out = {m.centroid, m.variance, m.core_span, m.total_span};
  });
}

erratic_status erratic_swarm1d_run_until_gathered(erratic_swarm1d* swarm, uint64_t max_steps,
                                                  uint64_t stride, erratic_row1d_fn on_row,
                                                  void* user, erratic_gathering* out) {
  return guarded([&] {
    require(swarm, out);
    CallbackSink sink(on_row, user);
    erratic::GatheringResult r = erratic::run_until_gathered(
        swarm->swarm, max_steps, on_row ? &sink : nullptr, stride == 0 ? 1 : stride);
    *out = {r.T, r.reached ? 1 : 0, r.invariants.violations};
    swarm->swarm = std::move(r.final_state);
  });
}

erratic_status erratic_swarm1d_run_unilateral_sweep(erratic_swarm1d* swarm, uint64_t max_steps,
                                                    erratic_sweep* out) {
  return guarded([&] {
    require(swarm, out);
    erratic::SweepResult r = erratic::run_unilateral_sweep(swarm->swarm, max_steps);
    *out = {r.T, r.finished ? 1 : 0, r.in_window ? 1 : 0};
    swarm->swarm = std::move(r.final_state);
  });
}

erratic_status erratic_uniform_placement(size_t n, double s0, uint64_t seed, double* out) {
  return guarded([&] {
    if (n > 0) require(out);
    if (!(s0 > 0.0)) throw erratic::ValidationError("S0 must be positive");
    erratic::Rng rng(erratic::derive_seed(seed, "placement", 0));
    const auto xs = erratic::uniform_placement(n, s0, rng);
    std::copy(xs.begin(), xs.end(), out);
  });
}

erratic_status erratic_swarm2d_create(const double* xy, size_t n, double epsilon, uint64_t seed,
                                      erratic_swarm2d** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    if (n > 0) require(xy);
    std::vector<erratic::Vec2> points(n);
    for (size_t i = 0; i < n; ++i) points[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new erratic_swarm2d{erratic::Swarm2D(std::move(points), epsilon, seed)};
  });
}

erratic_status erratic_swarm2d_create_uniform(size_t n, double side, double epsilon, uint64_t seed,
                                              erratic_swarm2d** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    if (!(side > 0.0) || !std::isfinite(side)) throw erratic::ValidationError("side must be positive");
    erratic::Rng placement(erratic::derive_seed(seed, "placement", 0));
    *out = new erratic_swarm2d{erratic::Swarm2D(erratic::uniform_square(n, side, placement), epsilon,
                                                erratic::derive_seed(seed, "dynamics", 0))};
  });
}

void erratic_swarm2d_destroy(erratic_swarm2d* swarm) { delete swarm; }

size_t erratic_swarm2d_size(const erratic_swarm2d* swarm) { return swarm ? swarm->swarm.size() : 0; }

uint64_t erratic_swarm2d_time(const erratic_swarm2d* swarm) { return swarm ? swarm->swarm.time() : 0; }

erratic_status erratic_swarm2d_positions(const erratic_swarm2d* swarm, double* xy, size_t n) {
  return guarded([&] {
    require(swarm);
    if (n > 0) require(xy);
    const auto pts = swarm->swarm.points();
    for (size_t i = 0; i < std::min(n, pts.size()); ++i) {
      xy[2 * i] = pts[i].x;
      xy[2 * i + 1] = pts[i].y;
    }
  });
}

erratic_status erratic_swarm2d_step(erratic_swarm2d* swarm, uint64_t steps) {
  return guarded([&] {
    require(swarm);
    for (uint64_t i = 0; i < steps; ++i) swarm->swarm.step();
  });
}

erratic_status erratic_swarm2d_run(erratic_swarm2d* swarm, uint64_t steps, uint64_t stride,
                                   erratic_row2d_fn on_row, void* user) {
  return guarded([&] {
    require(swarm);
    const auto rows = erratic::run2d(swarm->swarm, steps, stride == 0 ? 1 : stride);
    if (!on_row) return;
    for (const auto& r : rows) {
      const erratic_row2d row{r.t, r.cx, r.cy, r.diameter, r.hull_count};
      on_row(&row, user);
    }
  });
}

erratic_status erratic_swarm2d_hull(const erratic_swarm2d* swarm, size_t* indices, size_t capacity,
                                    size_t* count) {
  return guarded([&] {
    require(swarm, count);
    if (capacity > 0) require(indices);
    const erratic::HullInfo hull = swarm->swarm.hull();
    *count = hull.indices.size();
    for (size_t i = 0; i < std::min(capacity, hull.indices.size()); ++i) indices[i] = hull.indices[i];
  });
}

erratic_status erratic_experiment_validate(const char* config_json, char** resolved) {
  return guarded([&] {
    require(config_json);
    if (resolved) *resolved = nullptr;
    const erratic::RunConfig config = erratic::config_from_json(config_json);
    config.spec.validate();
    if (resolved) *resolved = dup_string(erratic::config_to_json(config));
  });
}

erratic_status erratic_experiment_run(const char* config_json, const char* out_dir,
                                      char** summary_json) {
  return guarded([&] {
    require(config_json, out_dir);
    if (summary_json) *summary_json = nullptr;
    const erratic::RunConfig config = erratic::config_from_json(config_json);
    config.spec.validate();
    const nlohmann::json summary = run_and_write(config, out_dir);
    if (summary_json) *summary_json = dup_string(summary.dump());
  });
}

}  // extern "C"
