#pragma once

// Planar variant: agents on the convex hull move a unit distance along the
// interior angle bisector, inward w.p. 1 - eps and outward w.p. eps. All hull
// vertices move in the same tick; everyone else stays put.

#include <cstdint>
#include <vector>

#include "erratic/analytics.hpp"
#include "erratic/geometry.hpp"
#include "erratic/rng.hpp"

namespace erratic {

class Swarm2D {
 public:
  /// Throws ValidationError for an empty set or non-finite coordinates.
  Swarm2D(std::vector<Vec2> points, double epsilon, std::uint64_t seed);

  /// One tick. Hull vertices draw in counter-clockwise hull order. A set with
  /// a single distinct location does not move; two hull vertices move along
  /// the segment joining them.
  void step();

  std::span<const Vec2> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::uint64_t time() const noexcept { return t_; }
  const WalkParams& params() const noexcept { return params_; }

  Vec2 centroid() const noexcept;
  HullInfo hull() const { return convex_hull(points_); }

 private:
  std::vector<Vec2> points_;
  WalkParams params_;
  Rng rng_;
  std::uint64_t t_ = 0;
};

struct Trajectory2DRow {
  std::uint64_t t = 0;
  double cx = 0.0;
  double cy = 0.0;
  double diameter = 0.0;
  std::size_t hull_count = 0;
};

Trajectory2DRow trajectory_row(const Swarm2D& swarm);

/// Runs `steps` ticks and returns rows at t = 0 and every `stride` ticks.
std::vector<Trajectory2DRow> run2d(Swarm2D& swarm, std::uint64_t steps, std::uint64_t stride);

/// n points uniform on the square [0, side]^2, drawn from `rng`.
std::vector<Vec2> uniform_square(std::size_t n, double side, Rng& rng);

}  // namespace erratic
