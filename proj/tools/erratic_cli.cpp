// Command-line front end over the C API.
//
// Exit codes: 0 success, 1 user error (bad flags, config or parameters),
// 2 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erratic/erratic.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(erratic_status status) {
  if (status == ERRATIC_OK) return;
  const std::string msg = std::string(erratic_status_string(status)) + ": " + erratic_last_error();
  if (status == ERRATIC_INTERNAL || status == ERRATIC_INVARIANT) throw InternalError(msg);
  throw UserError(msg);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_positions(const std::string& text) {
  std::vector<double> xs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    try {
      xs.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw UserError("bad position '" + item + "'");
    }
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
      throw UserError("bad position '" + item + "'");
    }
  }
  if (xs.empty()) throw UserError("no positions given");
  return xs;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UserError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UserError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UserError("config '" + path + "' must be a JSON object");
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UserError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw UserError("failed writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UserError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

template <class T>
T pick(const json& cfg, const char* key, const std::optional<T>& flag, T fallback) {
  if (flag) return *flag;
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const json::exception& e) {
      throw UserError(std::string("config key '") + key + "': " + e.what());
    }
  }
  return fallback;
}

// ---- analytic ----

struct AnalyticArgs {
  std::string formula;
  double epsilon = 0.1;
  double k = 1;
  unsigned terms = 36;
  std::string positions;
  long long n = 0;
  double s0 = 0;
  double total_span = 0;
  long long right = 1;
  long long left = -1;
};

const char* kFormulas =
    "catalan, hit-minus-one, hit-plus-one, expected-steps, excursion-bound, pi, "
    "stationary-mean, tail-single, tail-sum, markov-bound, hit-series, unilateral-bound, "
    "half-shrink-bound, min-frac-distance, gathering-bound, chain-oracle";

long long as_integer(double k) {
  if (k != static_cast<double>(static_cast<long long>(k))) throw UserError("--k must be an integer here");
  return static_cast<long long>(k);
}

int run_analytic(const AnalyticArgs& a) {
  const double eps = a.epsilon;
  double v = 0.0;
  const std::string& f = a.formula;
  if (f == "catalan") {
    if (a.k < 0) throw UserError("--k must be >= 0");
    uint64_t c = 0;
    check(erratic_catalan(static_cast<unsigned>(as_integer(a.k)), &c));
    std::cout << c << "\n";
    return 0;
  }
  if (f == "chain-oracle") {
    erratic_absorption r{};
    check(erratic_finite_chain_oracle(eps, a.right, a.left, &r));
    std::cout << "p_left " << fmt(r.p_left) << "\np_right " << fmt(r.p_right) << "\nexpected_time "
              << fmt(r.expected_time) << "\n";
    return 0;
  }
  if (f == "gathering-bound") {
    const auto xs = parse_positions(a.positions);
    int gathered = 0;
    check(erratic_gathering_time_bound(xs.data(), xs.size(), eps, &v, &gathered));
    if (gathered) std::cerr << "already gathered\n";
  } else if (f == "hit-minus-one") {
    check(erratic_prob_hit_minus_one(eps, &v));
  } else if (f == "hit-plus-one") {
    check(erratic_prob_hit_plus_one(eps, &v));
  } else if (f == "expected-steps") {
    check(erratic_expected_steps_to_minus_one(eps, &v));
  } else if (f == "excursion-bound") {
    check(erratic_farthest_excursion_bound(eps, &v));
  } else if (f == "pi") {
    check(erratic_stationary_pi(eps, as_integer(a.k), &v));
  } else if (f == "stationary-mean") {
    check(erratic_stationary_mean(eps, &v));
  } else if (f == "tail-single") {
    check(erratic_tail_prob_single(eps, as_integer(a.k), &v));
  } else if (f == "tail-sum") {
    check(erratic_tail_prob_sum(eps, as_integer(a.k), &v));
  } else if (f == "markov-bound") {
    check(erratic_markov_span_bound(eps, a.k, &v));
  } else if (f == "hit-series") {
    check(erratic_hit_minus_one_series(eps, a.terms, &v));
  } else if (f == "unilateral-bound") {
    const auto xs = parse_positions(a.positions);
    check(erratic_gathering_bound_unilateral(xs.data(), xs.size(), eps, &v));
  } else if (f == "half-shrink-bound") {
    check(erratic_half_shrink_bound(a.n, a.s0, a.total_span, eps, &v));
  } else if (f == "min-frac-distance") {
    const auto xs = parse_positions(a.positions);
    check(erratic_min_fractional_distance(xs.data(), xs.size(), &v));
  } else {
    throw UserError("unknown formula '" + f + "'; expected one of: " + kFormulas);
  }
  std::cout << fmt(v) << "\n";
  return 0;
}

// ---- sim1d ----

struct Sim1dFlags {
  std::string config;
  std::optional<std::string> positions;
  std::optional<std::string> uniform;
  std::optional<double> epsilon;
  std::optional<uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<uint64_t> max_steps;
  std::optional<uint64_t> stride;
  std::string out = "sim1d-out";
};

erratic_mode parse_mode(const std::string& m) {
  if (m == "bilateral") return ERRATIC_BILATERAL;
  if (m == "unilateral-right") return ERRATIC_UNILATERAL_RIGHT;
  if (m == "unilateral-left") return ERRATIC_UNILATERAL_LEFT;
  throw UserError("unknown mode '" + m + "' (bilateral, unilateral-right, unilateral-left)");
}

std::string positions_to_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) throw UserError("config key 'positions' must be a list or string");
  std::string text;
  for (const auto& x : v) {
    if (!text.empty()) text += ",";
    text += fmt(x.get<double>());
  }
  return text;
}

int run_sim1d(const Sim1dFlags& f) {
  const json cfg = load_config(f.config);
  for (const auto& item : cfg.items()) {
    static const std::vector<std::string> known = {"positions", "uniform", "epsilon", "seed",
                                                   "mode",      "max_steps", "stride"};
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw UserError("unknown sim1d config key '" + item.key() + "'");
    }
  }
  json resolved;
  resolved["epsilon"] = pick<double>(cfg, "epsilon", f.epsilon, 0.1);
  resolved["seed"] = pick<uint64_t>(cfg, "seed", f.seed, 1);
  resolved["mode"] = pick<std::string>(cfg, "mode", f.mode, "bilateral");
  resolved["max_steps"] = pick<uint64_t>(cfg, "max_steps", f.max_steps, 10'000'000);
  resolved["stride"] = pick<uint64_t>(cfg, "stride", f.stride, 1);
  if (resolved["stride"].get<uint64_t>() == 0) throw UserError("--stride must be >= 1");

  std::optional<std::string> positions = f.positions;
  std::optional<std::string> uniform = f.uniform;
  if (!positions && !uniform) {
    if (cfg.contains("positions")) positions = positions_to_text(cfg.at("positions"));
    if (cfg.contains("uniform")) uniform = cfg.at("uniform").get<std::string>();
  }
  if (positions.has_value() == uniform.has_value()) {
    throw UserError("give exactly one of --positions or --uniform \"N S0\"");
  }
  const double eps = resolved["epsilon"];
  const uint64_t seed = resolved["seed"];
  std::vector<double> xs;
  if (positions) {
    xs = parse_positions(*positions);
    resolved["positions"] = xs;
  } else {
    std::istringstream in(*uniform);
    long long n = 0;
    double s0 = 0;
    std::string rest;
    if (!(in >> n >> s0) || (in >> rest) || n < 1) throw UserError("--uniform expects \"N S0\"");
    xs.resize(static_cast<std::size_t>(n));
    check(erratic_uniform_placement(xs.size(), s0, seed, xs.data()));
    resolved["uniform"] = *uniform;
  }

  const erratic_mode mode = parse_mode(resolved["mode"]);
  erratic_swarm1d* swarm = nullptr;
  check(erratic_swarm1d_create(xs.data(), xs.size(), eps, seed, mode, &swarm));
  std::unique_ptr<erratic_swarm1d, void (*)(erratic_swarm1d*)> guard(swarm, erratic_swarm1d_destroy);

  const fs::path out(f.out);
  ensure_dir(out);
  write_file(out / "config.json", resolved.dump(2) + "\n");

  const uint64_t max_steps = resolved["max_steps"];
  if (mode != ERRATIC_BILATERAL) {
    erratic_sweep r{};
    check(erratic_swarm1d_run_unilateral_sweep(swarm, max_steps, &r));
    std::vector<double> final_xs(erratic_swarm1d_size(swarm));
    check(erratic_swarm1d_positions(swarm, final_xs.data(), final_xs.size()));
    std::string csv = "index,position\n";
    for (std::size_t i = 0; i < final_xs.size(); ++i) csv += std::to_string(i) + "," + fmt(final_xs[i]) + "\n";
    write_file(out / "final_positions.csv", csv);
    std::cout << "T " << r.t << "\nfinished " << (r.finished ? "true" : "false") << "\nin_window "
              << (r.in_window ? "true" : "false") << "\n";
    if (!r.finished) std::cout << "max_steps exhausted before the sweep finished\n";
    return 0;
  }

  std::string csv = "t,centroid,core_span,total_span,x_first,x_last\n";
  auto on_row = [](const erratic_row1d* row, void* user) {
    auto& text = *static_cast<std::string*>(user);
    text += std::to_string(row->t) + "," + fmt(row->centroid) + "," + fmt(row->core_span) + "," +
            fmt(row->total_span) + "," + fmt(row->x_first) + "," + fmt(row->x_last) + "\n";
  };
  erratic_gathering g{};
  check(erratic_swarm1d_run_until_gathered(swarm, max_steps, resolved["stride"], on_row, &csv, &g));
  write_file(out / "trajectory.csv", csv);
  erratic_metrics1d m{};
  check(erratic_swarm1d_metrics(swarm, &m));
  std::cout << "T " << g.t << "\nreached " << (g.reached ? "true" : "false") << "\ncore_span "
            << fmt(m.core_span) << "\ntotal_span " << fmt(m.total_span) << "\n";
  if (!g.reached) std::cout << "max_steps exhausted before gathering\n";
  if (g.invariant_violations > 0) {
    std::cerr << "invariant violations: " << g.invariant_violations << "\n";
    return 2;
  }
  return 0;
}

// ---- sim2d ----

struct Sim2dFlags {
  std::string config;
  std::optional<uint64_t> n;
  std::optional<double> side;
  std::optional<double> epsilon;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> steps;
  std::optional<uint64_t> stride;
  std::string out = "sim2d-out";
};

int run_sim2d(const Sim2dFlags& f) {
  const json cfg = load_config(f.config);
  for (const auto& item : cfg.items()) {
    static const std::vector<std::string> known = {"N", "side", "epsilon", "seed", "steps", "stride"};
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw UserError("unknown sim2d config key '" + item.key() + "'");
    }
  }
  json resolved;
  resolved["N"] = pick<uint64_t>(cfg, "N", f.n, 400);
  resolved["side"] = pick<double>(cfg, "side", f.side, 30.0);
  resolved["epsilon"] = pick<double>(cfg, "epsilon", f.epsilon, 0.1);
  resolved["seed"] = pick<uint64_t>(cfg, "seed", f.seed, 1);
  resolved["steps"] = pick<uint64_t>(cfg, "steps", f.steps, 400);
  resolved["stride"] = pick<uint64_t>(cfg, "stride", f.stride, 1);
  if (resolved["N"].get<uint64_t>() == 0) throw UserError("--n must be >= 1");
  if (resolved["steps"].get<uint64_t>() == 0) throw UserError("--steps must be >= 1");
  if (resolved["stride"].get<uint64_t>() == 0) throw UserError("--stride must be >= 1");

  erratic_swarm2d* swarm = nullptr;
  check(erratic_swarm2d_create_uniform(resolved["N"], resolved["side"], resolved["epsilon"],
                                       resolved["seed"], &swarm));
  std::unique_ptr<erratic_swarm2d, void (*)(erratic_swarm2d*)> guard(swarm, erratic_swarm2d_destroy);

  const fs::path out(f.out);
  ensure_dir(out);
  write_file(out / "config.json", resolved.dump(2) + "\n");

  struct Collect {
    std::string csv = "t,cx,cy,diameter,hull_count\n";
    double first = -1.0;
    double last = 0.0;
  } collect;
  auto on_row = [](const erratic_row2d* row, void* user) {
    auto& c = *static_cast<Collect*>(user);
    c.csv += std::to_string(row->t) + "," + fmt(row->cx) + "," + fmt(row->cy) + "," +
             fmt(row->diameter) + "," + std::to_string(row->hull_count) + "\n";
    if (c.first < 0.0) c.first = row->diameter;
    c.last = row->diameter;
  };
  check(erratic_swarm2d_run(swarm, resolved["steps"], resolved["stride"], on_row, &collect));
  write_file(out / "trajectory2d.csv", collect.csv);
  std::cout << "initial_diameter " << fmt(collect.first) << "\nfinal_diameter " << fmt(collect.last)
            << "\n";
  return 0;
}

// ---- experiment ----

struct ExperimentFlags {
  std::string config;
  std::optional<std::string> kind;
  std::vector<double> epsilon;
  std::vector<long long> n;
  std::vector<double> s0;
  std::optional<uint64_t> trials;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> max_steps;
  std::optional<uint64_t> warmup;
  std::optional<uint64_t> samples;
  std::optional<uint64_t> stride;
  std::optional<uint64_t> msd_lag;
  std::vector<long long> exit_floors;
  std::optional<uint64_t> chain_burn_in;
  std::optional<unsigned> threads;
  std::vector<std::string> formats;
  std::string out = "experiment-out";
};

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void put(json& j, const char* key, const std::vector<T>& v) {
  if (!v.empty()) j[key] = v;
}

int run_experiment(const ExperimentFlags& f) {
  json cfg = load_config(f.config);
  put(cfg, "kind", f.kind);
  put(cfg, "epsilon", f.epsilon);
  put(cfg, "N", f.n);
  put(cfg, "S0", f.s0);
  put(cfg, "trials", f.trials);
  put(cfg, "seed", f.seed);
  put(cfg, "max_steps", f.max_steps);
  put(cfg, "warmup", f.warmup);
  put(cfg, "samples", f.samples);
  put(cfg, "stride", f.stride);
  put(cfg, "msd_lag", f.msd_lag);
  put(cfg, "exit_floors", f.exit_floors);
  put(cfg, "chain_burn_in", f.chain_burn_in);
  put(cfg, "formats", f.formats);
  if (f.threads) {
    cfg["threads"] = *f.threads;
  } else if (!cfg.contains("threads")) {
    cfg["threads"] = 0;  // machine parallelism
  }

  char* resolved = nullptr;
  check(erratic_experiment_validate(cfg.dump().c_str(), &resolved));
  const std::string resolved_text(resolved);
  erratic_string_free(resolved);

  const fs::path out(f.out);
  ensure_dir(out);
  write_file(out / "config.json", resolved_text);

  char* summary = nullptr;
  check(erratic_experiment_run(resolved_text.c_str(), out.string().c_str(), &summary));
  const json s = json::parse(summary);
  erratic_string_free(summary);
  for (const auto& d : s.at("diagnostics")) std::cerr << "diagnostic: " << d.get<std::string>() << "\n";
  std::cout << "rows " << s.at("rows").get<uint64_t>() << "\n";
  for (const auto& file : s.at("files")) std::cout << "wrote " << (out / file.get<std::string>()).string() << "\n";
  std::cout << "wrote " << (out / "manifest.json").string() << "\n";
  if (s.at("incomplete").get<bool>()) std::cout << "incomplete: some grid points did not finish\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erratic-extremist opinion dynamics: closed forms, simulations and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(erratic_version()));

  AnalyticArgs analytic;
  auto* a = app.add_subcommand("analytic", "Evaluate a closed-form quantity");
  a->add_option("formula", analytic.formula, std::string("One of: ") + kFormulas)->required();
  a->add_option("--epsilon", analytic.epsilon, "Bias parameter in [0, 0.5)")->capture_default_str();
  a->add_option("--k", analytic.k, "State, span level or Catalan index")->capture_default_str();
  a->add_option("--terms", analytic.terms, "Series terms for hit-series (<= 36)")->capture_default_str();
  a->add_option("--positions", analytic.positions, "Comma-separated positions (beacon first for unilateral-bound)");
  a->add_option("--n", analytic.n, "Agent count for half-shrink-bound");
  a->add_option("--s0", analytic.s0, "Initial core span beyond 1 for half-shrink-bound");
  a->add_option("--total-span", analytic.total_span, "Initial total span for half-shrink-bound");
  a->add_option("--right", analytic.right, "Upper barrier for chain-oracle")->capture_default_str();
  a->add_option("--left", analytic.left, "Lower target for chain-oracle")->capture_default_str();

  Sim1dFlags sim1d;
  auto* s1 = app.add_subcommand("sim1d", "Run one swarm on the line until it gathers");
  s1->add_option("--config", sim1d.config, "JSON config; flags override its keys");
  s1->add_option("--positions", sim1d.positions, "Comma-separated initial positions");
  s1->add_option("--uniform", sim1d.uniform, "\"N S0\": N uniform points with inner span 1 + S0");
  s1->add_option("--epsilon", sim1d.epsilon, "Bias parameter in [0, 0.5) (default 0.1)");
  s1->add_option("--seed", sim1d.seed, "Random seed (default 1)");
  s1->add_option("--mode", sim1d.mode, "bilateral, unilateral-right or unilateral-left (default bilateral)");
  s1->add_option("--max-steps", sim1d.max_steps, "Tick cap (default 1e7)");
  s1->add_option("--stride", sim1d.stride, "Trajectory row stride (default 1)");
  s1->add_option("--out", sim1d.out, "Output directory")->capture_default_str();

  Sim2dFlags sim2d;
  auto* s2 = app.add_subcommand("sim2d", "Run the planar convex-hull swarm");
  s2->add_option("--config", sim2d.config, "JSON config; flags override its keys");
  s2->add_option("--n", sim2d.n, "Agent count (default 400)");
  s2->add_option("--side", sim2d.side, "Initial square side (default 30)");
  s2->add_option("--epsilon", sim2d.epsilon, "Bias parameter in [0, 0.5) (default 0.1)");
  s2->add_option("--seed", sim2d.seed, "Random seed (default 1)");
  s2->add_option("--steps", sim2d.steps, "Ticks to run (default 400)");
  s2->add_option("--stride", sim2d.stride, "Trajectory row stride (default 1)");
  s2->add_option("--out", sim2d.out, "Output directory")->capture_default_str();

  ExperimentFlags exp;
  auto* e = app.add_subcommand("experiment", "Run a Monte Carlo experiment sweep");
  e->add_option("--config", exp.config, "JSON config; flags override its keys");
  e->add_option("--kind", exp.kind,
                "convergence-vs-epsilon, convergence-vs-S0, convergence-vs-N, span-distribution, "
                "centroid-drift or walk-validation");
  e->add_option("--epsilon", exp.epsilon, "Epsilon grid")->delimiter(',');
  e->add_option("--N", exp.n, "Agent-count grid")->delimiter(',');
  e->add_option("--S0", exp.s0, "Initial core-span grid")->delimiter(',');
  e->add_option("--trials", exp.trials, "Trials per grid point (>= 2)");
  e->add_option("--seed", exp.seed, "Top-level seed");
  e->add_option("--max-steps", exp.max_steps, "Tick cap per gathering run");
  e->add_option("--warmup", exp.warmup, "Ticks discarded after gathering");
  e->add_option("--samples", exp.samples, "Total span samples, drift ticks or chain samples");
  e->add_option("--stride", exp.stride, "Ticks between span samples");
  e->add_option("--msd-lag", exp.msd_lag, "MSD window length in ticks");
  e->add_option("--exit-floors", exp.exit_floors, "Lower barriers for exit checks")->delimiter(',');
  e->add_option("--chain-burn-in", exp.chain_burn_in, "Reflected-chain burn-in");
  e->add_option("--threads", exp.threads, "Worker threads (0 = all cores; default 0)");
  e->add_option("--format", exp.formats, "Output formats: csv, jsonl")->delimiter(',');
  e->add_option("--out", exp.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 1;
  }

  try {
    if (a->parsed()) return run_analytic(analytic);
    if (s1->parsed()) return run_sim1d(sim1d);
    if (s2->parsed()) return run_sim2d(sim2d);
    if (e->parsed()) return run_experiment(exp);
  } catch (const UserError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 2;
  }
  return 1;
}
