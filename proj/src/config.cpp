#include "erratic/config.hpp"

#include <set>

#include <json.hpp>

#include "erratic/error.hpp"

namespace erratic {

namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

// Accepts a scalar as a one-element list.
template <class T>
void read_list(const json& j, const char* key, std::vector<T>& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  try {
    out = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> known = {
      "kind",   "epsilon", "N",       "S0",          "trials",        "seed",    "max_steps",
      "warmup", "samples", "stride",  "msd_lag",     "exit_floors",   "chain_burn_in",
      "threads", "formats"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ValidationError("unknown config key '" + item.key() + "'");
  }
  RunConfig config;
  ExperimentSpec& s = config.spec;
  if (j.contains("kind")) {
    std::string kind;
    read(j, "kind", kind);
    s.kind = parse_experiment_kind(kind);
  }
  read_list(j, "epsilon", s.epsilons);
  read_list(j, "N", s.ns);
  read_list(j, "S0", s.s0s);
  read(j, "trials", s.trials);
  read(j, "seed", s.seed);
  read(j, "max_steps", s.max_steps);
  read(j, "warmup", s.warmup);
  read(j, "samples", s.samples);
  read(j, "stride", s.stride);
  read(j, "msd_lag", s.msd_lag);
  read_list(j, "exit_floors", s.exit_floors);
  read(j, "chain_burn_in", s.chain_burn_in);
  read(j, "threads", s.threads);
  read_list(j, "formats", config.formats);
  for (const std::string& f : config.formats) {
    if (f != "csv" && f != "jsonl") throw ValidationError("unknown output format '" + f + "'");
  }
  return config;
}

std::string config_to_json(const RunConfig& config) {
  const ExperimentSpec& s = config.spec;
  json j = json::object();
  j["kind"] = to_string(s.kind);
  j["epsilon"] = s.epsilons;
  j["N"] = s.ns;
  j["S0"] = s.s0s;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["max_steps"] = s.max_steps;
  j["warmup"] = s.warmup;
  j["samples"] = s.samples;
  j["stride"] = s.stride;
  j["msd_lag"] = s.msd_lag;
  j["exit_floors"] = s.exit_floors;
  j["chain_burn_in"] = s.chain_burn_in;
  j["threads"] = s.threads;
  j["formats"] = config.formats;
  return j.dump(2) + "\n";
}

}  // namespace erratic
