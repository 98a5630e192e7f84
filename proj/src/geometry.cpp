#include "erratic/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "erratic/error.hpp"

namespace erratic {

namespace {

struct TwoTerm {
  double hi;
  double lo;
};

TwoTerm two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  return {s, (a - av) + (b - bv)};
}

TwoTerm two_product(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Sign of an exact sum, accumulated as a nonoverlapping expansion
// (components ordered by increasing magnitude).
int exact_sign_of_sum(std::span<const double> terms) noexcept {
  std::array<double, 16> expansion{};
  std::size_t length = 0;
  for (double b : terms) {
    double q = b;
    for (std::size_t i = 0; i < length; ++i) {
      const TwoTerm s = two_sum(q, expansion[i]);
      q = s.hi;
      expansion[i] = s.lo;
    }
    expansion[length++] = q;
  }
  for (std::size_t i = length; i-- > 0;) {
    if (expansion[i] > 0.0) return 1;
    if (expansion[i] < 0.0) return -1;
  }
  return 0;
}

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw DegenerateError("bisector undefined: zero-length direction");
  return {v.x / n, v.y / n};
}

}  // namespace

double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }

int orientation(Vec2 a, Vec2 b, Vec2 c) noexcept {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  constexpr double u = 0x1.0p-53;
  const double bound = (3.0 + 16.0 * u) * u * (std::fabs(left) + std::fabs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;

  // det = ax by - ax cy - ay bx + ay cx + bx cy - by cx, each product split
  // exactly into two doubles.
  const std::array<TwoTerm, 6> products = {
      two_product(a.x, b.y),  two_product(-a.x, c.y), two_product(-a.y, b.x),
      two_product(a.y, c.x),  two_product(b.x, c.y),  two_product(-b.y, c.x)};
  std::array<double, 12> terms{};
  for (std::size_t i = 0; i < products.size(); ++i) {
    terms[2 * i] = products[i].hi;
    terms[2 * i + 1] = products[i].lo;
  }
  return exact_sign_of_sum(terms);
}

HullInfo convex_hull(std::span<const Vec2> points) {
  HullInfo hull;
  if (points.empty()) return hull;

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (points[i].x != points[j].x) return points[i].x < points[j].x;
    if (points[i].y != points[j].y) return points[i].y < points[j].y;
    return i < j;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) { return points[i] == points[j]; }),
              order.end());

  if (order.size() <= 2) {
    hull.indices = order;
  } else {
    // Andrew's monotone chain; popping on orientation <= 0 drops collinear
    // edge-interior points.
    std::vector<std::size_t> chain(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i : order) {
      while (k >= 2 && orientation(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= 0) --k;
      chain[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (std::size_t r = order.size() - 1; r-- > 0;) {
      const std::size_t i = order[r];
      while (k >= lower && orientation(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= 0) --k;
      chain[k++] = i;
    }
    chain.resize(k - 1);
    hull.indices = std::move(chain);
  }

  hull.vertices.reserve(hull.indices.size());
  for (std::size_t i : hull.indices) hull.vertices.push_back(points[i]);
  if (hull.vertices.size() >= 2) {
    hull.bisectors.reserve(hull.vertices.size());
    for (std::size_t v = 0; v < hull.vertices.size(); ++v) {
      hull.bisectors.push_back(bisector_direction(hull, v));
    }
  }
  return hull;
}

Vec2 bisector_direction(const HullInfo& hull, std::size_t vertex) {
  const std::size_t h = hull.vertices.size();
  if (vertex >= h) throw ValidationError("vertex is not on the hull");
  if (h < 2) throw DegenerateError("a one-vertex hull has no bisector");
  const Vec2 here = hull.vertices[vertex];
  if (h == 2) return unit(hull.vertices[1 - vertex] - here);
  const Vec2 prev = hull.vertices[(vertex + h - 1) % h];
  const Vec2 next = hull.vertices[(vertex + 1) % h];
  return unit(unit(prev - here) + unit(next - here));
}

bool strictly_inside(const HullInfo& hull, Vec2 p) noexcept {
  const std::size_t h = hull.vertices.size();
  if (h < 3) return false;
  for (std::size_t i = 0; i < h; ++i) {
    if (orientation(hull.vertices[i], hull.vertices[(i + 1) % h], p) <= 0) return false;
  }
  return true;
}

double hull_diameter(const HullInfo& hull) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.vertices.size(); ++j) {
      best = std::max(best, norm(hull.vertices[i] - hull.vertices[j]));
    }
  }
  return best;
}

}  // namespace erratic
