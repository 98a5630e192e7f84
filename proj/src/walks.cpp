#include "erratic/walks.hpp"

#include <cmath>
#include <string>

#include "erratic/error.hpp"

namespace erratic {

FirstPassageTrial first_passage_trial(const WalkParams& p, Rng& rng, std::uint64_t cap) {
  const double eps = p.epsilon();
  FirstPassageTrial out;
  std::int64_t x = 0;
  while (x != -1) {
    if (out.steps == cap) {
      throw Error(ErrorCode::invariant,
                  "first-passage walk exceeded the safety cap of " + std::to_string(cap) + " steps");
    }
    x += rng.bernoulli(eps) ? 1 : -1;
    ++out.steps;
    if (x > out.max_excursion) out.max_excursion = x;
  }
  return out;
}

FirstPassageStats simulate_walk_first_passage(const WalkParams& p, std::uint64_t seed,
                                              std::uint64_t trials) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  RunningStats steps;
  RunningStats excursion;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, "first-passage", i));
    const FirstPassageTrial trial = first_passage_trial(p, rng);
    steps.add(static_cast<double>(trial.steps));
    excursion.add(static_cast<double>(trial.max_excursion));
  }
  return {steps.summary(), excursion.summary()};
}

Summary simulate_exit_probability(const WalkParams& p, std::uint64_t seed, std::uint64_t trials,
                                  std::int64_t upper, std::int64_t lower) {
  if (!(lower < 0 && upper > 0)) throw DomainError("exit probability needs lower < 0 < upper");
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const double eps = p.epsilon();
  RunningStats hits;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, "exit", i));
    std::int64_t x = 0;
    while (x != upper && x != lower) x += rng.bernoulli(eps) ? 1 : -1;
    hits.add(x == upper ? 1.0 : 0.0);
  }
  return hits.summary();
}

ChainOccupancy simulate_reflected_chain(const WalkParams& p, std::uint64_t seed,
                                        std::uint64_t burn_in, std::uint64_t samples) {
  if (samples == 0) throw ValidationError("samples must be >= 1");
  const double eps = p.epsilon();
  Rng rng(derive_seed(seed, "reflected-chain", 0));
  std::int64_t state = 1;
  auto advance = [&] {
    if (rng.bernoulli(eps)) {
      ++state;
    } else if (state > 1) {
      --state;
    }
  };
  for (std::uint64_t i = 0; i < burn_in; ++i) advance();

  std::vector<double> trace;
  trace.reserve(samples);
  std::vector<std::uint64_t> counts;
  for (std::uint64_t i = 0; i < samples; ++i) {
    advance();
    const auto k = static_cast<std::size_t>(state);
    if (counts.size() < k) counts.resize(k, 0);
    ++counts[k - 1];
    trace.push_back(static_cast<double>(state));
  }

  ChainOccupancy out;
  out.samples = samples;
  out.occupancy.reserve(counts.size());
  for (std::uint64_t c : counts) {
    out.occupancy.push_back(static_cast<double>(c) / static_cast<double>(samples));
  }
  out.mean = summarize(trace).mean;
  out.mean_stderr = samples >= 200 ? batch_means_stderr(trace, 100) : 0.0;
  return out;
}

double total_variation_to_stationary(const ChainOccupancy& chain, const WalkParams& p,
                                     long long max_state) {
  double tv = 0.0;
  for (long long k = 1; k <= max_state; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    const double empirical = idx < chain.occupancy.size() ? chain.occupancy[idx] : 0.0;
    tv += std::fabs(empirical - stationary_pi(p, k));
  }
  return 0.5 * tv;
}

}  // namespace erratic
