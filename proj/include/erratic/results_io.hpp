#pragma once

// Result files. CSV columns: kind,epsilon,N,S0,trials,mean,stddev,stderr,bound,ratio
// (empty where a field does not apply). JSON-lines rows carry the same keys
// with null for missing values. Numbers use 17 significant digits; LF only.

#include <optional>
#include <string>
#include <vector>

#include "erratic/experiments.hpp"

namespace erratic {

struct ResultRow {
  std::string kind;
  std::optional<double> epsilon;
  std::optional<long long> n;
  std::optional<double> s0;
  std::optional<std::uint64_t> trials;
  std::optional<double> mean;
  std::optional<double> stddev;
  std::optional<double> stderr_;
  std::optional<double> bound;
  std::optional<double> ratio;

  bool operator==(const ResultRow&) const = default;
};

struct HistogramRow {
  double epsilon = 0.0;
  long long n = 0;
  long long k = 0;
  std::uint64_t count = 0;
  double empirical_p = 0.0;
  double bound_p = 0.0;

  bool operator==(const HistogramRow&) const = default;
};

enum class ResultFormat { csv, json_lines };

/// Flattens an experiment result into summary rows. Sub-metrics are encoded
/// in the kind string, e.g. "walk-validation/first-passage".
std::vector<ResultRow> result_rows(const ExperimentResult& result);
std::vector<HistogramRow> histogram_rows(const ExperimentResult& result);

std::string format_number(double x);
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json_lines(const std::vector<ResultRow>& rows);
std::string histogram_csv(const std::vector<HistogramRow>& rows);

std::vector<ResultRow> parse_csv(const std::string& text);
std::vector<ResultRow> parse_json_lines(const std::string& text);
std::vector<HistogramRow> parse_histogram_csv(const std::string& text);

/// Writes rows to `path`; throws IoError naming the path on failure.
void write_results(const ExperimentResult& result, ResultFormat format, const std::string& path);
void write_histogram(const ExperimentResult& result, const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace erratic
