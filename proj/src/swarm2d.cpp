#include "erratic/swarm2d.hpp"

#include <cmath>

#include "erratic/error.hpp"

namespace erratic {

Swarm2D::Swarm2D(std::vector<Vec2> points, double epsilon, std::uint64_t seed)
    : points_(std::move(points)), params_(epsilon), rng_(seed) {
  if (points_.empty()) throw ValidationError("swarm needs at least one agent");
  for (const Vec2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError("coordinates must be finite");
    }
  }
}

void Swarm2D::step() {
  ++t_;
  const HullInfo hull = convex_hull(points_);
  if (hull.indices.size() < 2) return;
  const double eps = params_.epsilon();
  std::vector<Vec2> targets;
  targets.reserve(hull.indices.size());
  for (std::size_t v = 0; v < hull.indices.size(); ++v) {
    const Vec2 dir = rng_.bernoulli(eps) ? -1.0 * hull.bisectors[v] : hull.bisectors[v];
    targets.push_back(points_[hull.indices[v]] + dir);
  }
  for (std::size_t v = 0; v < hull.indices.size(); ++v) points_[hull.indices[v]] = targets[v];
}

Vec2 Swarm2D::centroid() const noexcept {
  Vec2 sum;
  for (const Vec2& p : points_) sum = sum + p;
  return (1.0 / static_cast<double>(points_.size())) * sum;
}

Trajectory2DRow trajectory_row(const Swarm2D& swarm) {
  const HullInfo hull = swarm.hull();
  const Vec2 c = swarm.centroid();
  return {swarm.time(), c.x, c.y, hull_diameter(hull), hull.indices.size()};
}

std::vector<Trajectory2DRow> run2d(Swarm2D& swarm, std::uint64_t steps, std::uint64_t stride) {
  if (steps == 0) throw ValidationError("run2d needs steps >= 1");
  if (stride == 0) throw ValidationError("trajectory stride must be >= 1");
  std::vector<Trajectory2DRow> rows;
  rows.push_back(trajectory_row(swarm));
  for (std::uint64_t i = 1; i <= steps; ++i) {
    swarm.step();
    if (i % stride == 0) rows.push_back(trajectory_row(swarm));
  }
  return rows;
}

std::vector<Vec2> uniform_square(std::size_t n, double side, Rng& rng) {
  std::vector<Vec2> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, side);
    const double y = rng.uniform(0.0, side);
    points.push_back({x, y});
  }
  return points;
}

}  // namespace erratic
