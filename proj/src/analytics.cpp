#include "erratic/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "erratic/error.hpp"

namespace erratic {

namespace {

// r^n by repeated multiplication; keeps tails monotone in n.
double power(double r, long long n) {
  double out = 1.0;
  for (long long i = 0; i < n; ++i) out *= r;
  return out;
}

double fractional_part(double x) { return x - std::floor(x); }

// Solves a constant-coefficient tridiagonal system
//   sub * u[j-1] + diag * u[j] + super * u[j+1] = rhs[j]
// with u[-1] = u[n] = 0 folded into rhs by the caller.
std::vector<double> solve_tridiagonal(double sub, double diag, double super, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  std::vector<double> c(n, 0.0);
  double denom = diag;
  c[0] = super / denom;
  rhs[0] /= denom;
  for (std::size_t j = 1; j < n; ++j) {
    denom = diag - sub * c[j - 1];
    c[j] = super / denom;
    rhs[j] = (rhs[j] - sub * rhs[j - 1]) / denom;
  }
  for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= c[j] * rhs[j + 1];
  return rhs;
}

}  // namespace

WalkParams::WalkParams(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw DomainError("epsilon must satisfy 0 <= epsilon < 1/2, got " + std::to_string(epsilon));
  }
  epsilon_ = epsilon;
  alpha_ = 0.5 - epsilon;
  ratio_ = epsilon / (1.0 - epsilon);
  drift_time_ = 1.0 / (1.0 - 2.0 * epsilon);
}

std::uint64_t catalan(unsigned k) {
  if (k > 35) {
    throw OverflowError("catalan(" + std::to_string(k) + ") exceeds the supported range k <= 35");
  }
  // C_{j+1} = C_j * 2(2j+1) / (j+2). Cancelling gcd(C_j, j+2) first leaves a
  // divisor that must divide 2(2j+1), so no intermediate exceeds C_{j+1}.
  std::uint64_t c = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    const std::uint64_t g = std::gcd(c, j + 2);
    const std::uint64_t rest = (j + 2) / g;
    c = (c / g) * ((2 * (2 * j + 1)) / rest);
  }
  return c;
}

double hit_minus_one_series(const WalkParams& p, unsigned terms) {
  if (terms > 36) throw OverflowError("series limited to 36 terms (catalan range)");
  const double left = 1.0 - p.epsilon();
  const double x = p.epsilon() * left;
  double sum = 0.0;
  double xk = 1.0;
  for (unsigned k = 0; k < terms; ++k) {
    sum += static_cast<double>(catalan(k)) * left * xk;
    xk *= x;
  }
  return sum;
}

double prob_hit_minus_one(const WalkParams&) { return 1.0; }

double prob_hit_plus_one(const WalkParams& p) { return p.ratio(); }

double expected_steps_to_minus_one(const WalkParams& p) { return p.drift_time(); }

double farthest_excursion_bound(const WalkParams& p) { return p.epsilon() * p.drift_time(); }

double stationary_pi(const WalkParams& p, long long k) {
  if (k < 1) throw DomainError("stationary_pi requires k >= 1");
  const double eps = p.epsilon();
  return power(p.ratio(), k - 1) * ((1.0 - 2.0 * eps) / (1.0 - eps));
}

double stationary_mean_series(const WalkParams& p) {
  double mean = 0.0;
  for (long long k = 1; k < 100000; ++k) {
    const double term = static_cast<double>(k) * stationary_pi(p, k);
    mean += term;
    if (term < 1e-18 * mean) break;
  }
  return mean;
}

double tail_prob_single(const WalkParams& p, long long k) {
  if (k < 1) throw DomainError("tail_prob_single requires k >= 1");
  return power(p.ratio(), k - 1);
}

double tail_prob_sum(const WalkParams& p, long long k) {
  if (k < 2) throw DomainError("tail_prob_sum requires k >= 2");
  const double eps = p.epsilon();
  const double stay = (1.0 - 2.0 * eps) / (1.0 - eps);
  return power(p.ratio(), k - 2) * (static_cast<double>(k - 2) * stay + 1.0);
}

double markov_span_bound(const WalkParams& p, double k) {
  if (!(k > 0.0)) throw DomainError("markov_span_bound requires k > 0");
  const double bound = 1.0 / k + (2.0 * p.epsilon() / k) * p.drift_time();
  return std::min(1.0, bound);
}

double gathering_bound_unilateral(std::span<const double> positions, const WalkParams& p) {
  if (positions.size() < 2) {
    throw ValidationError("unilateral bound needs a beacon and at least one agent");
  }
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i] > positions[i - 1])) {
      throw ValidationError("unilateral bound needs strictly increasing positions (beacon first)");
    }
  }
  const double beacon = positions[0];
  double jumps = 0.0;
  for (std::size_t i = 1; i < positions.size(); ++i) {
    jumps += std::floor(positions[i] - beacon) + 1.0;
  }
  return p.drift_time() * jumps;
}

double half_shrink_bound(long long n, double s0, double total_span0, const WalkParams& p) {
  if (n < 3) throw ValidationError("half_shrink_bound requires N >= 3");
  if (!(s0 > 0.0)) throw ValidationError("half_shrink_bound requires S0 > 0");
  if (!(total_span0 >= 1.0 + s0)) {
    throw ValidationError("half_shrink_bound requires total span >= 1 + S0");
  }
  return p.drift_time() *
         (static_cast<double>(n - 2) * std::ceil(s0 / 2.0) + (total_span0 - 1.0));
}

double min_fractional_distance(std::span<const double> positions) {
  if (positions.size() < 2) {
    throw ValidationError("min_fractional_distance needs at least two positions");
  }
  std::vector<double> frac;
  frac.reserve(positions.size());
  for (double x : positions) frac.push_back(fractional_part(x));
  std::sort(frac.begin(), frac.end());
  // On the circle the nearest pair is adjacent after sorting, or the
  // wrap-around pair (largest, smallest).
  double d = 1.0 - (frac.back() - frac.front());
  for (std::size_t i = 1; i < frac.size(); ++i) {
    const double gap = frac[i] - frac[i - 1];
    if (gap == 0.0) {
      throw DegenerateError("positions share a fractional part; use the coincident-position rule");
    }
    d = std::min(d, gap);
  }
  return d;
}

double gathering_time_bound_terms(long long n, double s0, double d, double total_span,
                                  const WalkParams& p) {
  // Snap log2 values within rounding noise of an integer before the ceiling.
  double halvings = 0.0;
  if (s0 > d) {
    const double l = std::log2(s0 / d);
    halvings = std::fabs(l - std::round(l)) < 1e-9 ? std::round(l) : std::ceil(l);
  }
  return (static_cast<double>(n) * (s0 + halvings) + (total_span - s0 - 1.0)) * p.drift_time();
}

GatheringBound gathering_time_bound(std::span<const double> sorted_positions, const WalkParams& p) {
  const std::size_t n = sorted_positions.size();
  if (n < 4) throw ValidationError("gathering_time_bound requires N >= 4");
  if (!std::is_sorted(sorted_positions.begin(), sorted_positions.end())) {
    throw ValidationError("gathering_time_bound requires sorted positions");
  }
  GatheringBound out;
  out.s0 = sorted_positions[n - 2] - sorted_positions[1] - 1.0;
  out.total_span = sorted_positions[n - 1] - sorted_positions[0];
  out.d = min_fractional_distance(sorted_positions);
  if (out.s0 <= 0.0) {
    out.already_gathered = true;
    return out;
  }
  out.steps = gathering_time_bound_terms(static_cast<long long>(n), out.s0, out.d,
                                         out.total_span, p);
  return out;
}

AbsorptionResult finite_chain_oracle(const WalkParams& p, long long right_barrier,
                                     long long left_target) {
  if (!(left_target < 0 && right_barrier > 0)) {
    throw DomainError("finite_chain_oracle requires left_target < 0 < right_barrier");
  }
  if (right_barrier - left_target > 10000) {
    throw DomainError("finite_chain_oracle interval longer than 10^4 states");
  }
  const double eps = p.epsilon();
  // Interior states left_target+1 .. right_barrier-1; the start state 0 sits
  // at offset -left_target - 1.
  const std::size_t interior = static_cast<std::size_t>(right_barrier - left_target - 1);
  const std::size_t origin = static_cast<std::size_t>(-left_target - 1);

  std::vector<double> rhs_hit(interior, 0.0);
  rhs_hit.back() += eps;  // h(right_barrier) = 1
  const auto hit = solve_tridiagonal(-(1.0 - eps), 1.0, -eps, std::move(rhs_hit));
  const auto time = solve_tridiagonal(-(1.0 - eps), 1.0, -eps, std::vector<double>(interior, 1.0));

  AbsorptionResult out;
  out.p_right = hit[origin];
  out.p_left = 1.0 - out.p_right;
  out.expected_time = time[origin];
  return out;
}

}  // namespace erratic
