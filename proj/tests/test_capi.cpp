// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "erratic/erratic.h"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(erratic_version(), "0.1.0");
  EXPECT_STREQ(erratic_status_string(ERRATIC_OK), "ok");
  EXPECT_STREQ(erratic_status_string(ERRATIC_DOMAIN), "domain error");
}

TEST(CApi, ClosedForms) {
  double v = 0.0;
  ASSERT_EQ(erratic_expected_steps_to_minus_one(0.1, &v), ERRATIC_OK);
  EXPECT_DOUBLE_EQ(v, 1.25);
  ASSERT_EQ(erratic_stationary_pi(0.1, 1, &v), ERRATIC_OK);
  EXPECT_NEAR(v, 8.0 / 9.0, 1e-15);
  uint64_t c = 0;
  ASSERT_EQ(erratic_catalan(10, &c), ERRATIC_OK);
  EXPECT_EQ(c, 16796u);
  EXPECT_EQ(erratic_catalan(36, &c), ERRATIC_OVERFLOW);
  EXPECT_NE(std::strlen(erratic_last_error()), 0u);
  EXPECT_EQ(erratic_prob_hit_plus_one(0.6, &v), ERRATIC_DOMAIN);
  EXPECT_EQ(erratic_prob_hit_plus_one(0.1, nullptr), ERRATIC_INVALID_ARGUMENT);
  const double frac[] = {0.25, 1.25};
  EXPECT_EQ(erratic_min_fractional_distance(frac, 2, &v), ERRATIC_DEGENERATE);
  const double unsorted[] = {0.0, 1.7, 0.5};
  EXPECT_EQ(erratic_gathering_bound_unilateral(unsorted, 3, 0.1, &v), ERRATIC_VALIDATION);

  const double pos[] = {0.1, 0.35, 1.6, 2.85};
  int gathered = -1;
  ASSERT_EQ(erratic_gathering_time_bound(pos, 4, 0.1, &v, &gathered), ERRATIC_OK);
  EXPECT_NEAR(v, 3.125, 1e-12);
  EXPECT_EQ(gathered, 0);

  erratic_absorption a{};
  ASSERT_EQ(erratic_finite_chain_oracle(0.1, 1, -50, &a), ERRATIC_OK);
  EXPECT_NEAR(a.p_right, 1.0 / 9.0, 1e-3);
}

TEST(CApi, WalkSimulators) {
  erratic_summary steps{}, exc{};
  ASSERT_EQ(erratic_walk_first_passage(0.0, 1, 100, &steps, &exc), ERRATIC_OK);
  EXPECT_EQ(steps.mean, 1.0);
  EXPECT_EQ(steps.count, 100u);
  erratic_summary exit{};
  ASSERT_EQ(erratic_walk_exit_probability(0.1, 2, 1000, 1, -10, &exit), ERRATIC_OK);
  EXPECT_GT(exit.mean, 0.0);
  std::vector<double> occ(30);
  double tv = 1.0, mean = 0.0, se = 0.0;
  ASSERT_EQ(erratic_reflected_chain(0.1, 3, 1000, 50000, occ.data(), occ.size(), &tv, &mean, &se), ERRATIC_OK);
  EXPECT_LT(tv, 0.05);
  EXPECT_NEAR(occ[0], 8.0 / 9.0, 0.02);
}

TEST(CApi, Swarm1DLifecycle) {
  const double xs[] = {4.9, 0.25, 2.75, 0.5};
  erratic_swarm1d* s = nullptr;
  ASSERT_EQ(erratic_swarm1d_create(xs, 4, 0.0, 1, ERRATIC_BILATERAL, &s), ERRATIC_OK);
  EXPECT_EQ(erratic_swarm1d_size(s), 4u);
  EXPECT_EQ(erratic_swarm1d_coincident(s), 0);

  erratic_swarm1d* copy = nullptr;
  ASSERT_EQ(erratic_swarm1d_clone(s, &copy), ERRATIC_OK);

  std::vector<erratic_row1d> rows;
  auto collect = [](const erratic_row1d* row, void* user) {
    static_cast<std::vector<erratic_row1d>*>(user)->push_back(*row);
  };
  erratic_gathering g{};
  ASSERT_EQ(erratic_swarm1d_run_until_gathered(s, 100, 1, collect, &rows, &g), ERRATIC_OK);
  EXPECT_EQ(g.t, 3u);
  EXPECT_EQ(g.reached, 1);
  EXPECT_EQ(g.invariant_violations, 0u);
  EXPECT_EQ(rows.size(), 4u);
  EXPECT_EQ(erratic_swarm1d_time(s), 3u);

  ASSERT_EQ(erratic_swarm1d_step(copy, 1), ERRATIC_OK);
  double after[4];
  ASSERT_EQ(erratic_swarm1d_positions(copy, after, 4), ERRATIC_OK);
  EXPECT_EQ(after[0], 0.5);
  EXPECT_EQ(after[1], 1.25);
  erratic_metrics1d m{};
  ASSERT_EQ(erratic_swarm1d_metrics(copy, &m), ERRATIC_OK);
  EXPECT_DOUBLE_EQ(m.core_span, 1.5);

  erratic_swarm1d_destroy(copy);
  erratic_swarm1d_destroy(s);
  erratic_swarm1d_destroy(nullptr);

  erratic_swarm1d* bad = reinterpret_cast<erratic_swarm1d*>(0x1);
  EXPECT_EQ(erratic_swarm1d_create(xs, 4, 0.7, 1, ERRATIC_BILATERAL, &bad), ERRATIC_DOMAIN);
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(erratic_swarm1d_create(xs, 4, 0.1, 1, static_cast<erratic_mode>(9), &bad), ERRATIC_VALIDATION);
}

TEST(CApi, UnilateralSweep) {
  const double xs[] = {0.0, 0.5, 1.7};
  erratic_swarm1d* s = nullptr;
  ASSERT_EQ(erratic_swarm1d_create(xs, 3, 0.0, 1, ERRATIC_UNILATERAL_RIGHT, &s), ERRATIC_OK);
  erratic_sweep r{};
  ASSERT_EQ(erratic_swarm1d_run_unilateral_sweep(s, 100, &r), ERRATIC_OK);
  EXPECT_EQ(r.t, 3u);
  EXPECT_EQ(r.finished, 1);
  EXPECT_EQ(r.in_window, 1);
  erratic_swarm1d_destroy(s);
}

TEST(CApi, UniformPlacement) {
  std::vector<double> a(20), b(20);
  ASSERT_EQ(erratic_uniform_placement(20, 10.0, 4, a.data()), ERRATIC_OK);
  ASSERT_EQ(erratic_uniform_placement(20, 10.0, 4, b.data()), ERRATIC_OK);
  EXPECT_EQ(a, b);
  EXPECT_EQ(erratic_uniform_placement(20, -1.0, 4, a.data()), ERRATIC_VALIDATION);
}

TEST(CApi, Swarm2D) {
  const double sq[] = {0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5};
  erratic_swarm2d* s = nullptr;
  ASSERT_EQ(erratic_swarm2d_create(sq, 5, 0.0, 1, &s), ERRATIC_OK);
  size_t idx[8];
  size_t count = 0;
  ASSERT_EQ(erratic_swarm2d_hull(s, idx, 8, &count), ERRATIC_OK);
  EXPECT_EQ(count, 4u);
  ASSERT_EQ(erratic_swarm2d_step(s, 1), ERRATIC_OK);
  double xy[10];
  ASSERT_EQ(erratic_swarm2d_positions(s, xy, 5), ERRATIC_OK);
  EXPECT_NEAR(xy[0], std::sqrt(0.5), 1e-15);
  EXPECT_EQ(xy[8], 0.5);
  erratic_swarm2d_destroy(s);

  ASSERT_EQ(erratic_swarm2d_create_uniform(100, 30.0, 0.1, 7, &s), ERRATIC_OK);
  std::vector<erratic_row2d> rows;
  auto collect = [](const erratic_row2d* row, void* user) {
    static_cast<std::vector<erratic_row2d>*>(user)->push_back(*row);
  };
  ASSERT_EQ(erratic_swarm2d_run(s, 50, 10, collect, &rows), ERRATIC_OK);
  EXPECT_EQ(rows.size(), 6u);
  EXPECT_EQ(erratic_swarm2d_time(s), 50u);
  EXPECT_EQ(erratic_swarm2d_run(s, 0, 1, nullptr, nullptr), ERRATIC_VALIDATION);
  erratic_swarm2d_destroy(s);
}

TEST(CApi, ExperimentRoundTrip) {
  const char* cfg = R"({"kind":"span-distribution","epsilon":[0.2],"N":[8],"S0":[4],"trials":2,"samples":2000,"threads":2})";
  char* resolved = nullptr;
  ASSERT_EQ(erratic_experiment_validate(cfg, &resolved), ERRATIC_OK);
  ASSERT_NE(resolved, nullptr);
  EXPECT_NE(std::string(resolved).find("\"msd_lag\""), std::string::npos);
  erratic_string_free(resolved);

  EXPECT_EQ(erratic_experiment_validate(R"({"trials":1})", nullptr), ERRATIC_VALIDATION);
  EXPECT_EQ(erratic_experiment_validate("{", nullptr), ERRATIC_VALIDATION);

  const auto dir = std::filesystem::temp_directory_path() / "erratic_capi_experiment";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "a");
  std::filesystem::create_directories(dir / "b");
  char* summary = nullptr;
  ASSERT_EQ(erratic_experiment_run(cfg, (dir / "a").c_str(), &summary), ERRATIC_OK) << erratic_last_error();
  EXPECT_NE(std::string(summary).find("histogram.csv"), std::string::npos);
  erratic_string_free(summary);
  ASSERT_EQ(erratic_experiment_run(cfg, (dir / "b").c_str(), nullptr), ERRATIC_OK);
  for (const char* f : {"results.csv", "results.jsonl", "histogram.csv"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  const std::string manifest = slurp(dir / "a" / "manifest.json");
  for (const char* key : {"\"version\"", "\"seed\"", "\"config\"", "\"wall_time_seconds\""}) {
    EXPECT_NE(manifest.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(erratic_experiment_run(cfg, (dir / "missing").c_str(), nullptr), ERRATIC_IO);
  std::filesystem::remove_all(dir);
}
