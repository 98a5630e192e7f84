#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace erratic {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) noexcept { return a.x == b.x && a.y == b.y; }
};

double norm(Vec2 v) noexcept;

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise,
/// 0 collinear. Exact for finite inputs: a floating-point filter decides the
/// clear cases and an exact expansion sum decides the rest.
int orientation(Vec2 a, Vec2 b, Vec2 c) noexcept;

struct HullInfo {
  std::vector<std::size_t> indices;  // into the input, counter-clockwise
  std::vector<Vec2> vertices;        // coordinates of indices, same order
  /// Interior bisector per vertex (unit norm). Empty for a one-vertex hull.
  std::vector<Vec2> bisectors;
};

/// Strict extreme points in counter-clockwise order, starting from the
/// lexicographically smallest. Coincident points appear once, represented by
/// their lowest input index; points inside an edge are excluded. All-collinear
/// input yields the two endpoints; identical input yields one vertex.
HullInfo convex_hull(std::span<const Vec2> points);

/// Unit inward direction at hull vertex `vertex` (position in hull order).
/// With three or more vertices it is the normalized sum of the unit edge
/// vectors toward both neighbours; with two it points at the other endpoint.
/// Throws DegenerateError for a one-vertex hull or a zero-length edge.
Vec2 bisector_direction(const HullInfo& hull, std::size_t vertex);

/// True if p is strictly inside the convex polygon (hull with >= 3 vertices).
bool strictly_inside(const HullInfo& hull, Vec2 p) noexcept;

/// Largest distance between two hull vertices.
double hull_diameter(const HullInfo& hull) noexcept;

}  // namespace erratic
