#pragma once

// Erratic-extremist dynamics on the line.
//
// Agents are indistinguishable; the state is the sorted multiset of their
// positions. At each tick only extremal agents move, by exactly one unit:
// toward the rest of the group with probability 1 - eps, away from it with
// probability eps. Each agent is stored as an integer part plus a fixed
// fractional part, so unit steps, ordering and span tests are exact. The
// double view of the positions is rounded and only used for reporting.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erratic/analytics.hpp"
#include "erratic/rng.hpp"

namespace erratic {

enum class Mode {
  bilateral,         // both extremists move each tick
  unilateral_right,  // only the rightmost agent moves
  unilateral_left,   // only the leftmost agent moves
};

const char* to_string(Mode mode) noexcept;
/// Accepts "bilateral", "unilateral-right", "unilateral-left".
Mode parse_mode(const std::string& name);

struct Move {
  std::size_t index = 0;  // storage index before the re-sort
  int direction = 0;      // +1 or -1
};

/// At most two agents move per tick.
struct StepOutcome {
  std::array<Move, 2> moves{};
  std::size_t count = 0;

  std::span<const Move> moved() const noexcept { return {moves.data(), count}; }
  /// Sum of directions; the centroid changes by this amount over N.
  int net_displacement() const noexcept;
};

/// Position split into an integer part and a fractional part in [0, 1).
struct ExactPosition {
  std::int64_t whole = 0;
  double frac = 0.0;

  static ExactPosition from_double(double x) noexcept;
  double value() const noexcept { return static_cast<double>(whole) + frac; }
  friend auto operator<=>(const ExactPosition&, const ExactPosition&) = default;
};

struct Metrics {
  double centroid = 0.0;
  double variance = 0.0;  // about the current centroid
  double core_span = 0.0;
  double total_span = 0.0;
};

class Swarm1D {
 public:
  /// Throws DomainError for epsilon outside [0, 1/2), ValidationError for an
  /// empty or non-finite configuration or any |x| >= 2^52.
  Swarm1D(std::vector<double> positions, double epsilon, std::uint64_t seed,
          Mode mode = Mode::bilateral);

  /// Advances one tick.
  ///
  /// The left extremist draws first, then the right one. When several agents
  /// share an extremal position only the one with the lowest storage index
  /// moves; if every agent shares one position the left-side mover is index 0
  /// and the right-side mover is index 1. A single agent never moves.
  StepOutcome step();

  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const ExactPosition> exact_positions() const noexcept { return agents_; }
  /// Sorted fractional parts; constant over the whole run.
  std::vector<double> fractional_parts() const;
  std::size_t size() const noexcept { return positions_.size(); }
  std::uint64_t time() const noexcept { return t_; }
  Mode mode() const noexcept { return mode_; }
  const WalkParams& params() const noexcept { return params_; }
  const Rng& rng() const noexcept { return rng_; }

  /// True when two initial positions share a fractional part, so agents can
  /// land on top of each other and the single-mover rule is in play.
  bool coincident() const noexcept { return coincident_; }

  double leftmost() const noexcept { return positions_.front(); }
  double rightmost() const noexcept { return positions_.back(); }
  /// Sum of integer parts plus the (constant) sum of fractional parts, over N.
  double centroid() const noexcept;
  /// Mean squared deviation from a fixed reference point.
  double variance_about(double reference) const noexcept;
  /// x_{N-1} - x_2; defined as 0 when N <= 3.
  double core_span() const noexcept;
  double total_span() const noexcept;
  /// Exact floor of the total span.
  std::int64_t total_span_floor() const noexcept;
  /// Exact test of core span <= 1.
  bool gathered() const noexcept;
  Metrics metrics() const noexcept;

  friend bool operator==(const Swarm1D& a, const Swarm1D& b);

 private:
  std::vector<ExactPosition> agents_;
  std::vector<double> positions_;  // agents_ rounded to double
  __int128 whole_sum_ = 0;
  double frac_sum_ = 0.0;
  WalkParams params_;
  Rng rng_;
  Mode mode_;
  std::uint64_t t_ = 0;
  bool coincident_ = false;
};

struct TrajectoryRow {
  std::uint64_t t = 0;
  double centroid = 0.0;
  double core_span = 0.0;
  double total_span = 0.0;
  double x_first = 0.0;
  double x_last = 0.0;
};

TrajectoryRow trajectory_row(const Swarm1D& swarm) noexcept;

class TrajectorySink {
 public:
  virtual ~TrajectorySink() = default;
  virtual void on_row(const TrajectoryRow& row) = 0;
};

class VectorSink final : public TrajectorySink {
 public:
  void on_row(const TrajectoryRow& row) override { rows.push_back(row); }
  std::vector<TrajectoryRow> rows;
};

/// Counts model-invariant violations seen while stepping.
struct InvariantReport {
  std::uint64_t violations = 0;
  std::string first;  // description of the first violation

  void record(std::uint64_t t, const std::string& what);
  bool ok() const noexcept { return violations == 0; }
};

struct GatheringResult {
  std::uint64_t T = 0;    // first t with core span <= 1
  bool reached = false;
  Swarm1D final_state;
  InvariantReport invariants;
};

/// Steps until the core span is <= 1 or max_steps ticks have elapsed.
///
/// While the core span exceeds 1 it checks that x_2 never decreases and
/// x_{N-1} never increases. For N <= 3 the core span is 0 and T = 0. When a
/// sink is given, rows are emitted at t = 0, every `stride` ticks, and at the
/// final tick.
GatheringResult run_until_gathered(Swarm1D swarm, std::uint64_t max_steps,
                                   TrajectorySink* sink = nullptr, std::uint64_t stride = 1);

/// Steps a gathered swarm for `steps` ticks and records any tick at which the
/// core span exceeds 1. `on_tick` is invoked after every step with the swarm
/// and the step outcome.
template <class OnTick>
InvariantReport advance_gathered(Swarm1D& swarm, std::uint64_t steps, OnTick&& on_tick) {
  InvariantReport report;
  for (std::uint64_t i = 0; i < steps; ++i) {
    const StepOutcome outcome = swarm.step();
    if (!swarm.gathered()) {
      report.record(swarm.time(), "core span exceeded 1 after gathering");
    }
    on_tick(static_cast<const Swarm1D&>(swarm), outcome);
  }
  return report;
}

/// Emits rows for `steps` ticks at the given stride (t = 0 included).
void run_trajectory(Swarm1D& swarm, std::uint64_t steps, std::uint64_t stride, TrajectorySink& sink);

struct SweepResult {
  std::uint64_t T = 0;       // ticks until the beacon became the extremal agent
  bool finished = false;
  bool in_window = false;    // all agents in (x0 - 1, x0] (mirrored for left mode)
  Swarm1D final_state;
};

/// Unilateral sweep against a fixed beacon. In unilateral-right mode the
/// beacon is the (strictly) leftmost initial agent and the run stops the first
/// time it is the rightmost; unilateral-left mirrors this.
SweepResult run_unilateral_sweep(Swarm1D swarm, std::uint64_t max_steps);

}  // namespace erratic
