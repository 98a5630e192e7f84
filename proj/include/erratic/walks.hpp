#pragma once

// Monte Carlo simulators for the single-walker facts: first passage to -1,
// two-sided exit, and the reflected bounding chain.

#include <cstdint>
#include <vector>

#include "erratic/analytics.hpp"
#include "erratic/rng.hpp"
#include "erratic/stats.hpp"

namespace erratic {

struct FirstPassageTrial {
  std::uint64_t steps = 0;
  std::int64_t max_excursion = 0;  // farthest point right of 0 reached before hitting -1
};

/// One left-biased walk from 0 until it first hits -1. Throws Error if the
/// walk has not finished after `cap` steps.
FirstPassageTrial first_passage_trial(const WalkParams& p, Rng& rng,
                                      std::uint64_t cap = 1'000'000'000ULL);

struct FirstPassageStats {
  Summary steps;
  Summary excursion;
};

/// Trial i draws from derive_seed(seed, "first-passage", i).
FirstPassageStats simulate_walk_first_passage(const WalkParams& p, std::uint64_t seed,
                                              std::uint64_t trials);

/// Fraction of walks from 0 that reach `upper` > 0 before `lower` < 0, as a
/// Summary of the 0/1 indicator. Trial i draws from
/// derive_seed(seed, "exit", i).
Summary simulate_exit_probability(const WalkParams& p, std::uint64_t seed, std::uint64_t trials,
                                  std::int64_t upper, std::int64_t lower);

struct ChainOccupancy {
  std::vector<double> occupancy;  // occupancy[k - 1] = fraction of samples in state k
  double mean = 0.0;
  double mean_stderr = 0.0;       // batch means, 100 batches
  std::uint64_t samples = 0;
};

/// The reflected chain on {1, 2, ...}: k -> k + 1 w.p. eps, otherwise
/// k -> max(1, k - 1). Starts at 1, discards `burn_in` steps, then records
/// one state per step. Draws from derive_seed(seed, "reflected-chain", 0).
ChainOccupancy simulate_reflected_chain(const WalkParams& p, std::uint64_t seed,
                                        std::uint64_t burn_in, std::uint64_t samples);

/// Total variation distance between the empirical occupancy and pi over
/// states 1..max_state.
double total_variation_to_stationary(const ChainOccupancy& chain, const WalkParams& p,
                                     long long max_state);

}  // namespace erratic
