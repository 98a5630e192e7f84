#pragma once

// Closed-form results for the left-biased +/-1 random walk and the
// gathering-time bounds of the erratic-extremist model.
//
// Every function here is pure. Positions are measured in units of one jump.

#include <cstdint>
#include <span>
#include <vector>

namespace erratic {

/// Bias parameter of the walk: a step goes against the preferred direction
/// with probability epsilon. alpha = 1/2 - epsilon is the bias strength.
class WalkParams {
 public:
  /// Throws DomainError unless 0 <= epsilon < 1/2.
  explicit WalkParams(double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  double alpha() const noexcept { return alpha_; }
  /// epsilon / (1 - epsilon), the geometric ratio shared by every tail formula.
  double ratio() const noexcept { return ratio_; }
  /// 1 / (1 - 2 epsilon) = 1 / (2 alpha).
  double drift_time() const noexcept { return drift_time_; }

 private:
  double epsilon_;
  double alpha_;
  double ratio_;
  double drift_time_;
};

/// Catalan number C_k, exact. Throws OverflowError for k > 35.
std::uint64_t catalan(unsigned k);

/// Partial sum over j = 0..terms-1 of C_j (1-eps) (eps (1-eps))^j, the
/// first-passage series for reaching -1. Converges to 1. terms <= 36.
double hit_minus_one_series(const WalkParams& p, unsigned terms);

double prob_hit_minus_one(const WalkParams& p);
double prob_hit_plus_one(const WalkParams& p);
double expected_steps_to_minus_one(const WalkParams& p);
double farthest_excursion_bound(const WalkParams& p);

/// Stationary law of the reflected bounding chain on {1, 2, ...}:
/// pi(k) = r^(k-1) (1-2eps)/(1-eps), r = eps/(1-eps). k >= 1.
double stationary_pi(const WalkParams& p, long long k);

/// Mean of the stationary law, summed as a series (not the closed form), so
/// it can serve as an independent reference for simulation.
double stationary_mean_series(const WalkParams& p);

/// P(X >= k) = r^(k-1) for X ~ pi. k >= 1.
double tail_prob_single(const WalkParams& p, long long k);

/// P(X + Y >= k) for independent X, Y ~ pi. k >= 2.
///
/// This is the upper bound on P(total span >= k) after gathering. The bound
/// follows from total span <= X + Y under the coupling, so it bounds the
/// upper tail; the inequality printed with the original statement has the
/// direction reversed.
double tail_prob_sum(const WalkParams& p, long long k);

/// Markov-inequality bound min(1, 1/k + 2 eps / (k (1 - 2 eps))) on
/// P(total span >= k). k > 0.
double markov_span_bound(const WalkParams& p, double k);

/// Expected sweep time when only the rightmost agent moves and a fixed beacon
/// sits at positions[0]: (1/(1-2eps)) sum_{k>=1} (floor(x_k - x_0) + 1).
/// positions must be strictly increasing.
double gathering_bound_unilateral(std::span<const double> positions, const WalkParams& p);

/// Bound on the expected time for the core span to drop from 1 + s0 to
/// 1 + s0/2: (1/(1-2eps)) ((n-2) ceil(s0/2) + (total_span0 - 1)).
double half_shrink_bound(long long n, double s0, double total_span0, const WalkParams& p);

/// Smallest circular distance between the fractional parts of any two
/// positions. Throws DegenerateError if two fractional parts coincide.
double min_fractional_distance(std::span<const double> positions);

struct GatheringBound {
  double steps = 0.0;            // bound on E[T]; 0 when already gathered
  bool already_gathered = false; // core span <= 1 at t = 0
  double s0 = 0.0;               // x_{N-1} - x_2 - 1
  double d = 0.0;                // min fractional distance
  double total_span = 0.0;       // x_N - x_1
};

/// The bound formula from its ingredients:
///   (n (s0 + ceil(log2(s0/d))) + (total_span - s0 - 1)) / (1 - 2 eps),
/// with the logarithm term taken as 0 when s0 <= d.
double gathering_time_bound_terms(long long n, double s0, double d, double total_span,
                                  const WalkParams& p);

/// Bound on E[time until the core span is <= 1] for a sorted configuration
/// with n >= 4 and distinct fractional parts.
GatheringBound gathering_time_bound(std::span<const double> sorted_positions, const WalkParams& p);

struct AbsorptionResult {
  double p_left = 0.0;         // probability of absorption at left_target
  double p_right = 0.0;        // probability of absorption at right_barrier
  double expected_time = 0.0;  // expected steps to absorption
};

/// Exact solution of the walk started at 0 and absorbed at left_target < 0 or
/// right_barrier > 0. The interior recurrences
///   h(i) = eps h(i+1) + (1-eps) h(i-1),  m(i) = 1 + eps m(i+1) + (1-eps) m(i-1)
/// are solved as tridiagonal systems. Interval length is capped at 10^4.
AbsorptionResult finite_chain_oracle(const WalkParams& p, long long right_barrier,
                                     long long left_target);

}  // namespace erratic
