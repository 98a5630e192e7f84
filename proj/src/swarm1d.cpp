#include "erratic/swarm1d.hpp"

#include <algorithm>
#include <cmath>

#include "erratic/error.hpp"

namespace erratic {

namespace {

constexpr double kMaxMagnitude = 0x1.0p52;

// True when b - a <= 1, for a <= b.
bool within_one(const ExactPosition& a, const ExactPosition& b) noexcept {
  const std::int64_t d = b.whole - a.whole;
  return d < 1 || (d == 1 && b.frac <= a.frac);
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::bilateral: return "bilateral";
    case Mode::unilateral_right: return "unilateral-right";
    case Mode::unilateral_left: return "unilateral-left";
  }
  return "unknown";
}

Mode parse_mode(const std::string& name) {
  if (name == "bilateral") return Mode::bilateral;
  if (name == "unilateral-right") return Mode::unilateral_right;
  if (name == "unilateral-left") return Mode::unilateral_left;
  throw ValidationError("unknown mode '" + name + "'");
}

ExactPosition ExactPosition::from_double(double x) noexcept {
  const double w = std::floor(x);
  return {static_cast<std::int64_t>(w), x - w};  // both parts exact below 2^52
}

int StepOutcome::net_displacement() const noexcept {
  int sum = 0;
  for (const Move& m : moved()) sum += m.direction;
  return sum;
}

Swarm1D::Swarm1D(std::vector<double> positions, double epsilon, std::uint64_t seed, Mode mode)
    : params_(epsilon), rng_(seed), mode_(mode) {
  if (positions.empty()) throw ValidationError("swarm needs at least one agent");
  for (double x : positions) {
    if (!std::isfinite(x)) throw ValidationError("positions must be finite");
    if (std::fabs(x) >= kMaxMagnitude) throw ValidationError("positions must satisfy |x| < 2^52");
    agents_.push_back(ExactPosition::from_double(x));
  }
  std::sort(agents_.begin(), agents_.end());
  positions_.reserve(agents_.size());
  for (const ExactPosition& a : agents_) {
    positions_.push_back(a.value());
    whole_sum_ += a.whole;
  }
  const std::vector<double> fracs = fractional_parts();
  for (double f : fracs) frac_sum_ += f;
  coincident_ = std::adjacent_find(fracs.begin(), fracs.end()) != fracs.end();
}

std::vector<double> Swarm1D::fractional_parts() const {
  std::vector<double> fracs;
  fracs.reserve(agents_.size());
  for (const ExactPosition& a : agents_) fracs.push_back(a.frac);
  std::sort(fracs.begin(), fracs.end());
  return fracs;
}

StepOutcome Swarm1D::step() {
  StepOutcome out;
  ++t_;
  const std::size_t n = agents_.size();
  if (n < 2) return out;

  const std::size_t left = 0;
  std::size_t right = static_cast<std::size_t>(
      std::lower_bound(agents_.begin(), agents_.end(), agents_.back()) - agents_.begin());
  if (right == left) right = 1;

  const double eps = params_.epsilon();
  int left_dir = 0;
  int right_dir = 0;
  if (mode_ != Mode::unilateral_right) left_dir = rng_.bernoulli(eps) ? -1 : +1;
  if (mode_ != Mode::unilateral_left) right_dir = rng_.bernoulli(eps) ? +1 : -1;

  ExactPosition left_to = agents_[left];
  ExactPosition right_to = agents_[right];
  left_to.whole += left_dir;
  right_to.whole += right_dir;
  whole_sum_ += left_dir + right_dir;
  if (left_dir != 0) out.moves[out.count++] = {left, left_dir};
  if (right_dir != 0) out.moves[out.count++] = {right, right_dir};

  auto erase = [&](std::size_t i) {
    agents_.erase(agents_.begin() + static_cast<std::ptrdiff_t>(i));
    positions_.erase(positions_.begin() + static_cast<std::ptrdiff_t>(i));
  };
  auto insert = [&](const ExactPosition& a) {
    const auto at = std::upper_bound(agents_.begin(), agents_.end(), a) - agents_.begin();
    agents_.insert(agents_.begin() + at, a);
    positions_.insert(positions_.begin() + at, a.value());
  };
  if (right_dir != 0) erase(right);
  if (left_dir != 0) erase(left);
  if (left_dir != 0) insert(left_to);
  if (right_dir != 0) insert(right_to);
  return out;
}

double Swarm1D::centroid() const noexcept {
  return (static_cast<double>(whole_sum_) + frac_sum_) / static_cast<double>(agents_.size());
}

double Swarm1D::variance_about(double reference) const noexcept {
  double sum = 0.0;
  for (const ExactPosition& a : agents_) {
    const double d = (static_cast<double>(a.whole) - reference) + a.frac;
    sum += d * d;
  }
  return sum / static_cast<double>(agents_.size());
}

static double span_between(const ExactPosition& a, const ExactPosition& b) noexcept {
  return static_cast<double>(b.whole - a.whole) + (b.frac - a.frac);
}

double Swarm1D::core_span() const noexcept {
  const std::size_t n = agents_.size();
  if (n <= 3) return 0.0;
  return span_between(agents_[1], agents_[n - 2]);
}

double Swarm1D::total_span() const noexcept { return span_between(agents_.front(), agents_.back()); }

std::int64_t Swarm1D::total_span_floor() const noexcept {
  const ExactPosition& a = agents_.front();
  const ExactPosition& b = agents_.back();
  return (b.whole - a.whole) - (b.frac < a.frac ? 1 : 0);
}

bool Swarm1D::gathered() const noexcept {
  const std::size_t n = agents_.size();
  return n <= 3 || within_one(agents_[1], agents_[n - 2]);
}

Metrics Swarm1D::metrics() const noexcept {
  Metrics m;
  m.centroid = centroid();
  m.variance = variance_about(m.centroid);
  m.core_span = core_span();
  m.total_span = total_span();
  return m;
}

bool operator==(const Swarm1D& a, const Swarm1D& b) {
  return a.t_ == b.t_ && a.mode_ == b.mode_ && a.params_.epsilon() == b.params_.epsilon() &&
         a.agents_ == b.agents_ && a.rng_ == b.rng_;
}

TrajectoryRow trajectory_row(const Swarm1D& swarm) noexcept {
  return {swarm.time(), swarm.centroid(), swarm.core_span(), swarm.total_span(), swarm.leftmost(),
          swarm.rightmost()};
}

void InvariantReport::record(std::uint64_t t, const std::string& what) {
  if (violations++ == 0) first = what + " at t=" + std::to_string(t);
}

GatheringResult run_until_gathered(Swarm1D swarm, std::uint64_t max_steps, TrajectorySink* sink,
                                   std::uint64_t stride) {
  if (stride == 0) throw ValidationError("trajectory stride must be >= 1");
  InvariantReport report;
  const std::uint64_t t0 = swarm.time();
  std::uint64_t last_emitted = t0;
  if (sink) sink->on_row(trajectory_row(swarm));

  const std::size_t n = swarm.size();
  while (!swarm.gathered() && swarm.time() - t0 < max_steps) {
    const ExactPosition inner_left = swarm.exact_positions()[1];
    const ExactPosition inner_right = swarm.exact_positions()[n - 2];
    swarm.step();
    if (!swarm.gathered()) {
      if (swarm.exact_positions()[1] < inner_left) report.record(swarm.time(), "x_2 decreased before gathering");
      if (swarm.exact_positions()[n - 2] > inner_right) {
        report.record(swarm.time(), "x_{N-1} increased before gathering");
      }
    }
    if (sink && (swarm.time() - t0) % stride == 0) {
      sink->on_row(trajectory_row(swarm));
      last_emitted = swarm.time();
    }
  }
  if (sink && last_emitted != swarm.time()) sink->on_row(trajectory_row(swarm));

  const bool reached = swarm.gathered();
  const std::uint64_t T = swarm.time() - t0;
  return GatheringResult{T, reached, std::move(swarm), std::move(report)};
}

void run_trajectory(Swarm1D& swarm, std::uint64_t steps, std::uint64_t stride, TrajectorySink& sink) {
  if (stride == 0) throw ValidationError("trajectory stride must be >= 1");
  sink.on_row(trajectory_row(swarm));
  for (std::uint64_t i = 1; i <= steps; ++i) {
    swarm.step();
    if (i % stride == 0) sink.on_row(trajectory_row(swarm));
  }
}

SweepResult run_unilateral_sweep(Swarm1D swarm, std::uint64_t max_steps) {
  const bool rightward = swarm.mode() == Mode::unilateral_right;
  if (swarm.mode() == Mode::bilateral) {
    throw ValidationError("unilateral sweep needs a unilateral mode");
  }
  const auto xs = swarm.exact_positions();
  if (xs.size() >= 2 && (rightward ? !(xs[1] > xs[0]) : !(xs[xs.size() - 2] < xs.back()))) {
    throw ValidationError("the beacon must be strictly extremal on the side opposite the mover");
  }
  const ExactPosition beacon = rightward ? xs.front() : xs.back();
  const std::uint64_t t0 = swarm.time();
  auto done = [&] {
    const auto now = swarm.exact_positions();
    return (rightward ? now.back() : now.front()) == beacon;
  };
  while (!done() && swarm.time() - t0 < max_steps) swarm.step();

  const bool finished = done();
  bool in_window = finished;
  const ExactPosition below{beacon.whole - 1, beacon.frac};
  const ExactPosition above{beacon.whole + 1, beacon.frac};
  for (const ExactPosition& x : swarm.exact_positions()) {
    in_window = in_window && (rightward ? (x > below && x <= beacon) : (x >= beacon && x < above));
  }
  return SweepResult{swarm.time() - t0, finished, in_window, std::move(swarm)};
}

}  // namespace erratic
