#include <gtest/gtest.h>

#include <filesystem>

#include "erratic/config.hpp"
#include "erratic/error.hpp"
#include "erratic/results_io.hpp"

using namespace erratic;

namespace {

ExperimentResult one_point() {
  ExperimentResult r;
  r.spec.kind = ExperimentKind::convergence_vs_s0;
  ConvergencePoint c;
  c.epsilon = 0.1;
  c.n = 100;
  c.s0 = 100.0;
  c.time = {100, 1602.37, 10000.0 / 3.0, 57.7, 5.77};
  c.bound = {100, 14918.125, 0.0, 0.0, 0.0};
  c.ratio = c.bound.mean / c.time.mean;
  r.convergence.push_back(c);
  return r;
}

}  // namespace

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.25), "1.25");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(std::nan("")), "");
}

TEST(ResultsCsv, EmptyResultIsHeaderOnly) {
  EXPECT_EQ(to_csv(result_rows(ExperimentResult{})), "kind,epsilon,N,S0,trials,mean,stddev,stderr,bound,ratio\n");
  EXPECT_EQ(to_json_lines({}), "");
}

TEST(ResultsCsv, OnePointRoundTrips) {
  const auto rows = result_rows(one_point());
  const std::string csv = to_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(parse_csv(csv), rows);
  EXPECT_EQ(parse_json_lines(to_json_lines(rows)), rows);
  EXPECT_EQ(rows[0].kind, "convergence-vs-S0");
}

TEST(ResultsCsv, MissingFieldsAreEmptyOrNull) {
  ResultRow r;
  r.kind = "walk-validation/chain-tv";
  r.epsilon = 0.1;
  r.mean = 0.002;
  const std::string csv = to_csv({r});
  EXPECT_NE(csv.find("walk-validation/chain-tv,0.10000000000000001,,,,0.002,,,,\n"), std::string::npos);
  const std::string jl = to_json_lines({r});
  EXPECT_NE(jl.find("\"N\":null"), std::string::npos);
  EXPECT_EQ(parse_json_lines(jl), std::vector<ResultRow>{r});
  EXPECT_EQ(parse_csv(csv), std::vector<ResultRow>{r});
}

TEST(ResultsCsv, RejectsMalformed) {
  EXPECT_THROW(parse_csv("a,b\n"), ValidationError);
  EXPECT_THROW(parse_csv("kind,epsilon,N,S0,trials,mean,stddev,stderr,bound,ratio\nx,1\n"), ValidationError);
  EXPECT_THROW(parse_json_lines("{not json}\n"), ValidationError);
}

TEST(Histogram, LongFormatRoundTrip) {
  ExperimentResult r;
  SpanDistribution d;
  d.epsilon = 0.1;
  d.n = 50;
  for (long long k = 0; k < 4; ++k) {
    SpanBin b;
    b.k = k;
    b.count = static_cast<std::uint64_t>(10 - k);
    b.empirical_p = 1.0 / static_cast<double>(k + 1);
    b.bound_p = k >= 2 ? 0.2 : 1.0;
    d.bins.push_back(b);
  }
  r.spans.push_back(d);
  const auto rows = histogram_rows(r);
  ASSERT_EQ(rows.size(), 4u);
  const std::string csv = histogram_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,N,k,count,empirical_p,bound_p");
  EXPECT_EQ(parse_histogram_csv(csv), rows);
}

TEST(WriteResults, FilesAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "erratic_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "r.csv").string();
  write_results(one_point(), ResultFormat::csv, path);
  EXPECT_EQ(parse_csv(read_text(path)), result_rows(one_point()));
  try {
    write_results(one_point(), ResultFormat::csv, "/nonexistent-dir/x.csv");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
  EXPECT_THROW(read_text("/nonexistent-dir/x.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Config, RoundTripAndDefaults) {
  RunConfig c = config_from_json("{}");
  EXPECT_EQ(c.spec.trials, 100u);
  EXPECT_EQ(c.formats, (std::vector<std::string>{"csv", "jsonl"}));
  c.spec.kind = ExperimentKind::centroid_drift;
  c.spec.epsilons = {0.1, 0.2};
  c.spec.seed = 18446744073709551615ULL;
  c.spec.exit_floors = {5};
  c.formats = {"jsonl"};
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.spec.kind, c.spec.kind);
  EXPECT_EQ(back.spec.epsilons, c.spec.epsilons);
  EXPECT_EQ(back.spec.seed, c.spec.seed);
  EXPECT_EQ(back.spec.exit_floors, c.spec.exit_floors);
  EXPECT_EQ(back.formats, c.formats);
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, ScalarsAndErrors) {
  const RunConfig c = config_from_json(R"({"kind":"span-distribution","epsilon":0.3,"N":50})");
  EXPECT_EQ(c.spec.kind, ExperimentKind::span_distribution);
  EXPECT_EQ(c.spec.epsilons, std::vector<double>{0.3});
  EXPECT_EQ(c.spec.ns, std::vector<long long>{50});
  EXPECT_THROW(config_from_json(R"({"trails":3})"), ValidationError);
  EXPECT_THROW(config_from_json(R"({"kind":"bogus"})"), ValidationError);
  EXPECT_THROW(config_from_json(R"({"trials":"many"})"), ValidationError);
  EXPECT_THROW(config_from_json(R"({"formats":["xml"]})"), ValidationError);
  EXPECT_THROW(config_from_json("[1,2]"), ValidationError);
  EXPECT_THROW(config_from_json("{"), ValidationError);
}
