#pragma once

// JSON form of ExperimentSpec. Keys: kind, epsilon[], N[], S0[], trials, seed,
// max_steps, warmup, samples, stride, msd_lag, exit_floors[], chain_burn_in,
// threads, formats[] ("csv", "jsonl"). Missing keys keep their defaults;
// unknown keys are rejected.

#include <string>
#include <vector>

#include "erratic/experiments.hpp"

namespace erratic {

struct RunConfig {
  ExperimentSpec spec;
  std::vector<std::string> formats = {"csv", "jsonl"};
};

/// Parses a JSON object; throws ValidationError on malformed input.
RunConfig config_from_json(const std::string& text);
/// Pretty-printed JSON with every key present (seeds as exact integers).
std::string config_to_json(const RunConfig& config);

}  // namespace erratic
