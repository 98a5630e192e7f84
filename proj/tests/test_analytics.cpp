#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "erratic/analytics.hpp"
#include "erratic/error.hpp"
#include "property.hpp"

using namespace erratic;

namespace {

// Exact binomial via 128-bit products; C(70, 35) * 70 still fits.
unsigned __int128 binomial(unsigned n, unsigned k) {
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double brute_min_fractional_distance(const std::vector<double>& xs) {
  double best = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double a = xs[i] - std::floor(xs[i]);
      const double b = xs[j] - std::floor(xs[j]);
      const double diff = std::fabs(a - b);
      best = std::min({best, diff, 1.0 - diff});
    }
  }
  return best;
}

// P(X + Y >= k) by direct convolution of the stationary law.
double convolution_tail(double eps, long long k) {
  const double r = eps / (1.0 - eps);
  const double c = (1.0 - 2.0 * eps) / (1.0 - eps);
  double below = 0.0;
  for (long long i = 1; i < k; ++i) {
    for (long long j = 1; i + j < k; ++j) below += c * std::pow(r, i - 1) * c * std::pow(r, j - 1);
  }
  return 1.0 - below;
}

}  // namespace

TEST(WalkParams, DomainAndDerivedValues) {
  EXPECT_THROW(WalkParams(-0.01), DomainError);
  EXPECT_THROW(WalkParams(0.5), DomainError);
  EXPECT_THROW(WalkParams(std::nan("")), DomainError);
  const WalkParams p(0.1);
  EXPECT_DOUBLE_EQ(p.alpha(), 0.4);
  EXPECT_EQ(p.epsilon() + p.alpha(), 0.5);
  EXPECT_DOUBLE_EQ(p.ratio(), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(p.drift_time(), 1.25);
}

TEST(Catalan, KnownValues) {
  EXPECT_EQ(catalan(0), 1u);
  EXPECT_EQ(catalan(3), 5u);
  EXPECT_EQ(catalan(10), 16796u);
  EXPECT_THROW(catalan(36), OverflowError);
}

TEST(Catalan, MatchesBinomialOracle) {
  for (unsigned k = 0; k <= 35; ++k) {
    const unsigned __int128 expected = binomial(2 * k, k) / (k + 1);
    EXPECT_EQ(static_cast<unsigned __int128>(catalan(k)), expected) << "k=" << k;
  }
}

TEST(HitProbabilities, ClosedForms) {
  for (double eps : {0.0, 0.1, 0.49}) EXPECT_EQ(prob_hit_minus_one(WalkParams(eps)), 1.0);
  EXPECT_EQ(prob_hit_plus_one(WalkParams(0.0)), 0.0);
  EXPECT_NEAR(prob_hit_plus_one(WalkParams(0.1)), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(prob_hit_plus_one(WalkParams(0.25)), 1.0 / 3.0, 1e-15);
}

TEST(HitProbabilities, SeriesIncreasesTowardOne) {
  for (double eps : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    const WalkParams p(eps);
    double prev = 0.0;
    for (unsigned terms = 1; terms <= 36; ++terms) {
      const double s = hit_minus_one_series(p, terms);
      EXPECT_GE(s, prev);  // strict until the partial sum rounds to 1
      EXPECT_LE(s, 1.0 + 1e-12);
      prev = s;
    }
    // C_k <= 4^k bounds the truncated tail by a geometric series.
    const double q = 4.0 * eps * (1.0 - eps);
    EXPECT_LE(1.0 - prev, (1.0 - eps) * std::pow(q, 36) / (1.0 - q) + 1e-15) << eps;
  }
}

TEST(Expectations, StepsAndExcursion) {
  EXPECT_EQ(expected_steps_to_minus_one(WalkParams(0.0)), 1.0);
  EXPECT_DOUBLE_EQ(expected_steps_to_minus_one(WalkParams(0.1)), 1.25);
  EXPECT_DOUBLE_EQ(expected_steps_to_minus_one(WalkParams(0.25)), 2.0);
  EXPECT_EQ(farthest_excursion_bound(WalkParams(0.0)), 0.0);
  EXPECT_DOUBLE_EQ(farthest_excursion_bound(WalkParams(0.1)), 0.125);
  EXPECT_DOUBLE_EQ(farthest_excursion_bound(WalkParams(0.25)), 0.5);
}

TEST(Stationary, Values) {
  EXPECT_NEAR(stationary_pi(WalkParams(0.1), 1), 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(stationary_pi(WalkParams(0.1), 2), 8.0 / 81.0, 1e-15);
  EXPECT_EQ(stationary_pi(WalkParams(0.0), 1), 1.0);
  EXPECT_EQ(stationary_pi(WalkParams(0.0), 2), 0.0);
  EXPECT_THROW(stationary_pi(WalkParams(0.1), 0), DomainError);
}

TEST(Stationary, PartialSumErrorIsTheTail) {
  for (double eps : {0.05, 0.1, 0.3, 0.45}) {
    const WalkParams p(eps);
    double sum = 0.0;
    for (long long k = 1; k <= 60; ++k) {
      sum += stationary_pi(p, k);
      EXPECT_NEAR(1.0 - sum, tail_prob_single(p, k + 1), 1e-12) << eps << " " << k;
    }
  }
}

TEST(Stationary, SeriesMeanMatchesClosedForm) {
  // E[X] = 1 + r/(1-r) for the geometric law on {1, 2, ...}.
  for (double eps : {0.0, 0.1, 0.3, 0.45}) {
    const double r = eps / (1.0 - eps);
    EXPECT_NEAR(stationary_mean_series(WalkParams(eps)), 1.0 / (1.0 - r), 1e-9) << eps;
  }
}

TEST(Tails, SingleAndSum) {
  EXPECT_EQ(tail_prob_single(WalkParams(0.2), 1), 1.0);
  EXPECT_NEAR(tail_prob_single(WalkParams(0.1), 3), 1.0 / 81.0, 1e-15);
  EXPECT_NEAR(tail_prob_single(WalkParams(0.25), 2), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(tail_prob_single(WalkParams(0.1), 0), DomainError);
  EXPECT_NEAR(tail_prob_sum(WalkParams(0.1), 4), 25.0 / 729.0, 1e-15);
  EXPECT_NEAR(tail_prob_sum(WalkParams(0.1), 3), 17.0 / 81.0, 1e-15);
  EXPECT_THROW(tail_prob_sum(WalkParams(0.1), 1), DomainError);
}

TEST(Tails, SumMatchesConvolutionOracle) {
  for (double eps : {0.05, 0.1, 0.25, 0.4}) {
    for (long long k = 2; k <= 15; ++k) {
      EXPECT_NEAR(tail_prob_sum(WalkParams(eps), k), convolution_tail(eps, k), 1e-12) << eps << " " << k;
    }
  }
}

TEST(Tails, SumIsOneAtTwoAndStrictlyDecreasing) {
  for (double eps = 0.01; eps < 0.5; eps += 0.04) {
    const WalkParams p(eps);
    EXPECT_EQ(tail_prob_sum(p, 2), 1.0);
    for (long long k = 2; k < 40; ++k) EXPECT_LT(tail_prob_sum(p, k + 1), tail_prob_sum(p, k));
  }
}

TEST(Tails, MarkovBound) {
  EXPECT_NEAR(markov_span_bound(WalkParams(0.1), 10), 0.125, 1e-15);
  EXPECT_EQ(markov_span_bound(WalkParams(0.0), 1), 1.0);
  EXPECT_NEAR(markov_span_bound(WalkParams(0.25), 20), 0.1, 1e-15);
  EXPECT_THROW(markov_span_bound(WalkParams(0.1), 0.0), DomainError);
}

TEST(Tails, MarkovDominatesCouplingBound) {
  for (double eps = 0.01; eps <= 0.45 + 1e-12; eps += 0.01) {
    for (double k = 3.0; k <= 40.0; k += 0.25) {
      const WalkParams p(eps);
      EXPECT_GE(markov_span_bound(p, k), tail_prob_sum(p, static_cast<long long>(std::ceil(k))))
          << eps << " " << k;
    }
  }
}

TEST(UnilateralBound, Examples) {
  const std::vector<double> a = {0.0, 0.5, 1.7};
  EXPECT_DOUBLE_EQ(gathering_bound_unilateral(a, WalkParams(0.1)), 3.75);
  const std::vector<double> b = {0.0, 0.5};
  EXPECT_DOUBLE_EQ(gathering_bound_unilateral(b, WalkParams(0.0)), 1.0);
  const std::vector<double> c = {0.0, 2.3, 2.4, 2.5};
  EXPECT_DOUBLE_EQ(gathering_bound_unilateral(c, WalkParams(0.25)), 18.0);
  const std::vector<double> unsorted = {0.0, 1.7, 0.5};
  EXPECT_THROW(gathering_bound_unilateral(unsorted, WalkParams(0.1)), ValidationError);
  const std::vector<double> dup = {0.0, 0.5, 0.5};
  EXPECT_THROW(gathering_bound_unilateral(dup, WalkParams(0.1)), ValidationError);
}

TEST(HalfShrinkBound, Examples) {
  EXPECT_DOUBLE_EQ(half_shrink_bound(4, 2.0, 5.0, WalkParams(0.1)), 7.5);
  EXPECT_DOUBLE_EQ(half_shrink_bound(3, 0.5, 1.5, WalkParams(0.0)), 1.5);
  EXPECT_DOUBLE_EQ(half_shrink_bound(3, 2.0, 3.0, WalkParams(0.25)), 6.0);
  EXPECT_THROW(half_shrink_bound(2, 2.0, 5.0, WalkParams(0.1)), ValidationError);
  EXPECT_THROW(half_shrink_bound(4, 0.0, 5.0, WalkParams(0.1)), ValidationError);
  EXPECT_THROW(half_shrink_bound(4, 2.0, 2.5, WalkParams(0.1)), ValidationError);
}

TEST(FractionalDistance, Examples) {
  EXPECT_DOUBLE_EQ(min_fractional_distance(std::vector<double>{0.0, 0.5}), 0.5);
  EXPECT_NEAR(min_fractional_distance(std::vector<double>{0.1, 0.4, 2.45}), 0.05, 1e-12);
  EXPECT_NEAR(min_fractional_distance(std::vector<double>{0.2, 1.9}), 0.3, 1e-12);
  EXPECT_THROW(min_fractional_distance(std::vector<double>{0.25, 3.25}), DegenerateError);
}

TEST(FractionalDistance, MatchesPairwiseOracle) {
  proptest::for_all(
      "frac-distance", 300,
      [](Rng& rng) {
        return proptest::distinct_fraction_positions(rng, static_cast<std::size_t>(proptest::int_in(rng, 2, 30)),
                                                     rng.uniform(1.0, 100.0));
      },
      [](const std::vector<double>& xs) {
        EXPECT_DOUBLE_EQ(min_fractional_distance(xs), brute_min_fractional_distance(xs));
      });
}

TEST(FractionalDistance, FarApartPairsAreAtLeastOnePlusD) {
  proptest::for_all(
      "fractional-gap", 300,
      [](Rng& rng) {
        return proptest::distinct_fraction_positions(rng, static_cast<std::size_t>(proptest::int_in(rng, 2, 20)),
                                                     rng.uniform(1.0, 20.0));
      },
      [](const std::vector<double>& xs) {
        const double d = min_fractional_distance(xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double gap = xs[j] - xs[i];
            if (gap > 1.0) {
              EXPECT_GE(gap, 1.0 + d - 1e-12);
            }
          }
        }
      });
}

TEST(GatheringTimeBound, Examples) {
  const std::vector<double> a = {0.1, 0.35, 1.6, 2.85};
  const GatheringBound ga = gathering_time_bound(a, WalkParams(0.1));
  EXPECT_FALSE(ga.already_gathered);
  EXPECT_NEAR(ga.s0, 0.25, 1e-12);
  EXPECT_NEAR(ga.d, 0.25, 1e-12);
  EXPECT_NEAR(ga.steps, 3.125, 1e-12);

  const std::vector<double> b = {0.1, 0.3, 4.4, 8.7};
  EXPECT_NEAR(gathering_time_bound(b, WalkParams(0.0)).steps, 36.9, 1e-9);

  const std::vector<double> gathered = {0.1, 0.3, 0.9, 5.0};
  const GatheringBound gg = gathering_time_bound(gathered, WalkParams(0.1));
  EXPECT_TRUE(gg.already_gathered);
  EXPECT_EQ(gg.steps, 0.0);

  const std::vector<double> dup = {0.5, 1.25, 4.25, 8.7};
  EXPECT_THROW(gathering_time_bound(dup, WalkParams(0.1)), DegenerateError);
  const std::vector<double> small = {0.1, 0.3, 4.4};
  EXPECT_THROW(gathering_time_bound(small, WalkParams(0.1)), ValidationError);
}

TEST(GatheringTimeBound, MonotoneInS0AndN) {
  const WalkParams p(0.15);
  for (double d : {0.01, 0.1, 0.3}) {
    for (double total = 50.0; total <= 200.0; total += 50.0) {
      double prev = 0.0;
      for (double s0 = 0.05; s0 < total - 1.0; s0 += 0.37) {
        const double b = gathering_time_bound_terms(10, s0, d, total, p);
        EXPECT_GE(b, prev);
        prev = b;
      }
      for (long long n = 4; n < 200; ++n) {
        EXPECT_LE(gathering_time_bound_terms(n, 10.0, d, total, p),
                  gathering_time_bound_terms(n + 1, 10.0, d, total, p));
      }
    }
  }
}

TEST(FiniteChainOracle, Examples) {
  EXPECT_THROW(finite_chain_oracle(WalkParams(0.5), 1, -1), DomainError);
  const AbsorptionResult one = finite_chain_oracle(WalkParams(0.1), 1, -1);
  EXPECT_NEAR(one.p_right, 0.1, 1e-15);
  EXPECT_NEAR(one.expected_time, 1.0, 1e-15);
  const AbsorptionResult far = finite_chain_oracle(WalkParams(0.1), 50, -1);
  EXPECT_GE(far.expected_time, 1.2499);
  EXPECT_LE(far.expected_time, 1.25);
  EXPECT_THROW(finite_chain_oracle(WalkParams(0.1), 0, -1), DomainError);
  EXPECT_THROW(finite_chain_oracle(WalkParams(0.1), 1, 0), DomainError);
  EXPECT_THROW(finite_chain_oracle(WalkParams(0.1), 5000, -5001), DomainError);
}

TEST(FiniteChainOracle, MatchesGamblersRuinFormula) {
  // Up-step probability eps: P(reach +a before -b) = (rho^b - 1) / (rho^(a+b) - 1), rho = (1-eps)/eps.
  for (double eps : {0.1, 0.25, 0.4, 0.45}) {
    const double rho = (1.0 - eps) / eps;
    for (long long a : {1, 2, 5}) {
      for (long long b : {1, 3, 10, 50}) {
        const double expected = (std::pow(rho, b) - 1.0) / (std::pow(rho, a + b) - 1.0);
        const AbsorptionResult r = finite_chain_oracle(WalkParams(eps), a, -b);
        EXPECT_NEAR(r.p_right, expected, 1e-10 * expected);
        EXPECT_NEAR(r.p_left + r.p_right, 1.0, 1e-12);
      }
    }
  }
}

TEST(FiniteChainOracle, LargeBarrierReproducesDriftTime) {
  for (double eps : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    const WalkParams p(eps);
    const auto barrier = static_cast<long long>(std::ceil(50.0 / (1.0 - 2.0 * eps)));
    const double m = finite_chain_oracle(p, barrier, -1).expected_time;
    EXPECT_NEAR(m / expected_steps_to_minus_one(p), 1.0, 1e-4) << eps;
  }
}

TEST(FiniteChainOracle, ConvergesToHitPlusOne) {
  const double p = finite_chain_oracle(WalkParams(0.1), 1, -50).p_right;
  EXPECT_NEAR(p, 1.0 / 9.0, 1e-3);
}
