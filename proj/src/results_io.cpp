#include "erratic/results_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "erratic/analytics.hpp"
#include "erratic/error.hpp"

namespace erratic {

namespace {

constexpr const char* kHeader = "kind,epsilon,N,S0,trials,mean,stddev,stderr,bound,ratio";
constexpr const char* kHistogramHeader = "epsilon,N,k,count,empirical_p,bound_p";

std::optional<double> finite(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  return x;
}

ResultRow make_row(std::string kind, double eps, std::optional<long long> n, std::uint64_t trials) {
  ResultRow row;
  row.kind = std::move(kind);
  row.epsilon = eps;
  row.n = n;
  row.trials = trials;
  return row;
}

void fill_summary(ResultRow& row, const Summary& s) {
  row.mean = finite(s.mean);
  row.stddev = finite(s.stddev);
  row.stderr_ = finite(s.stderr_);
}

// Frequency of a Bernoulli event with its binomial standard error.
ResultRow frequency_row(const std::string& kind, const DriftStats& d, std::uint64_t hits,
                        double expected, std::uint64_t trials) {
  ResultRow row = make_row(kind, d.epsilon, d.n, trials);
  const double n = static_cast<double>(d.ticks);
  const double p = n > 0 ? static_cast<double>(hits) / n : 0.0;
  row.mean = p;
  row.stddev = std::sqrt(p * (1.0 - p));
  row.stderr_ = n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0;
  row.bound = expected;
  return row;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  const long long v = parse_int(s);
  if (v < 0) throw ValidationError("negative count: '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

template <class T>
std::string field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

template <class T>
std::string json_field(const std::optional<T>& v) {
  return v ? field(v) : "null";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<ResultRow> result_rows(const ExperimentResult& result) {
  std::vector<ResultRow> rows;
  const std::uint64_t trials = result.spec.trials;
  for (const ConvergencePoint& c : result.convergence) {
    ResultRow row = make_row(to_string(result.spec.kind), c.epsilon, c.n, c.time.count);
    row.s0 = c.s0;
    fill_summary(row, c.time);
    row.bound = finite(c.bound.mean);
    if (c.time.mean > 0.0) row.ratio = finite(c.ratio);
    rows.push_back(row);
  }
  for (const SpanDistribution& s : result.spans) {
    ResultRow mean = make_row("span-distribution/total-span", s.epsilon, s.n, trials);
    fill_summary(mean, s.span);
    mean.bound = s.mean_span_bound;
    if (s.span.mean > 0.0) mean.ratio = s.mean_span_bound / s.span.mean;
    rows.push_back(mean);

    ResultRow slope = make_row("span-distribution/log-tail-slope", s.epsilon, s.n, trials);
    slope.mean = finite(s.slope);
    if (s.epsilon > 0.0) {
      const double reference = std::log(WalkParams(s.epsilon).ratio());
      slope.bound = reference;
      if (slope.mean) slope.ratio = *slope.mean / reference;
    }
    rows.push_back(slope);
  }
  for (const DriftStats& d : result.drift) {
    rows.push_back(frequency_row("centroid-drift/plus", d, d.plus, d.expected_side, trials));
    rows.push_back(
        frequency_row("centroid-drift/zero", d, d.zero, 1.0 - 2.0 * d.expected_side, trials));
    rows.push_back(frequency_row("centroid-drift/minus", d, d.minus, d.expected_side, trials));
    ResultRow msd = make_row("centroid-drift/msd-slope", d.epsilon, d.n, trials);
    msd.mean = d.msd_slope;
    msd.stderr_ = d.msd_slope_stderr;
    msd.bound = d.expected_msd_slope;
    if (d.expected_msd_slope > 0.0) msd.ratio = d.msd_slope / d.expected_msd_slope;
    rows.push_back(msd);
  }
  for (const WalkValidation& w : result.walks) {
    ResultRow steps = make_row("walk-validation/first-passage", w.epsilon, std::nullopt, w.steps.count);
    fill_summary(steps, w.steps);
    steps.bound = w.expected_steps;
    steps.ratio = w.expected_steps / w.steps.mean;
    rows.push_back(steps);

    ResultRow exc = make_row("walk-validation/excursion", w.epsilon, std::nullopt, w.excursion.count);
    fill_summary(exc, w.excursion);
    exc.bound = w.excursion_bound;
    if (w.excursion.mean > 0.0) exc.ratio = w.excursion_bound / w.excursion.mean;
    rows.push_back(exc);

    for (const ExitCheck& e : w.exits) {
      ResultRow exit = make_row("walk-validation/exit-floor-" + std::to_string(e.floor), w.epsilon,
                                std::nullopt, e.simulated.count);
      fill_summary(exit, e.simulated);
      exit.bound = e.oracle;
      rows.push_back(exit);
    }

    ResultRow mean = make_row("walk-validation/chain-mean", w.epsilon, std::nullopt, w.chain_samples);
    mean.mean = w.chain_mean;
    mean.stderr_ = w.chain_mean_stderr;
    mean.bound = w.stationary_mean;
    rows.push_back(mean);

    ResultRow tv = make_row("walk-validation/chain-tv", w.epsilon, std::nullopt, w.chain_samples);
    tv.mean = w.chain_tv;
    rows.push_back(tv);
  }
  return rows;
}

std::vector<HistogramRow> histogram_rows(const ExperimentResult& result) {
  std::vector<HistogramRow> rows;
  for (const SpanDistribution& s : result.spans) {
    for (const SpanBin& b : s.bins) {
      rows.push_back({s.epsilon, s.n, b.k, b.count, b.empirical_p, b.bound_p});
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const ResultRow& r : rows) {
    out += r.kind + "," + field(r.epsilon) + "," + field(r.n) + "," + field(r.s0) + "," +
           field(r.trials) + "," + field(r.mean) + "," + field(r.stddev) + "," + field(r.stderr_) +
           "," + field(r.bound) + "," + field(r.ratio) + "\n";
  }
  return out;
}

std::string to_json_lines(const std::vector<ResultRow>& rows) {
  std::string out;
  for (const ResultRow& r : rows) {
    out += "{\"kind\":" + json_string(r.kind) + ",\"epsilon\":" + json_field(r.epsilon) +
           ",\"N\":" + json_field(r.n) + ",\"S0\":" + json_field(r.s0) +
           ",\"trials\":" + json_field(r.trials) + ",\"mean\":" + json_field(r.mean) +
           ",\"stddev\":" + json_field(r.stddev) + ",\"stderr\":" + json_field(r.stderr_) +
           ",\"bound\":" + json_field(r.bound) + ",\"ratio\":" + json_field(r.ratio) + "}\n";
  }
  return out;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
  std::string out = std::string(kHistogramHeader) + "\n";
  for (const HistogramRow& h : rows) {
    out += format_number(h.epsilon) + "," + std::to_string(h.n) + "," + std::to_string(h.k) + "," +
           std::to_string(h.count) + "," + format_number(h.empirical_p) + "," +
           format_number(h.bound_p) + "\n";
  }
  return out;
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kHeader) throw ValidationError("missing results CSV header");
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 10) throw ValidationError("results CSV row " + std::to_string(i) + " has wrong arity");
    ResultRow r;
    r.kind = f[0];
    auto opt_d = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_double(s);
    };
    r.epsilon = opt_d(f[1]);
    if (!f[2].empty()) r.n = parse_int(f[2]);
    r.s0 = opt_d(f[3]);
    if (!f[4].empty()) r.trials = parse_uint(f[4]);
    r.mean = opt_d(f[5]);
    r.stddev = opt_d(f[6]);
    r.stderr_ = opt_d(f[7]);
    r.bound = opt_d(f[8]);
    r.ratio = opt_d(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> parse_json_lines(const std::string& text) {
  std::vector<ResultRow> rows;
  for (const std::string& line : lines_of(text)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("bad JSON-lines row: ") + e.what());
    }
    ResultRow r;
    r.kind = j.at("kind").get<std::string>();
    auto opt_d = [&](const char* key) -> std::optional<double> {
      if (j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<double>();
    };
    r.epsilon = opt_d("epsilon");
    if (!j.at("N").is_null()) r.n = j.at("N").get<long long>();
    r.s0 = opt_d("S0");
    if (!j.at("trials").is_null()) r.trials = j.at("trials").get<std::uint64_t>();
    r.mean = opt_d("mean");
    r.stddev = opt_d("stddev");
    r.stderr_ = opt_d("stderr");
    r.bound = opt_d("bound");
    r.ratio = opt_d("ratio");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<HistogramRow> parse_histogram_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kHistogramHeader) {
    throw ValidationError("missing histogram CSV header");
  }
  std::vector<HistogramRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 6) throw ValidationError("histogram row " + std::to_string(i) + " has wrong arity");
    rows.push_back({parse_double(f[0]), parse_int(f[1]), parse_int(f[2]), parse_uint(f[3]),
                    parse_double(f[4]), parse_double(f[5])});
  }
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading: " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_results(const ExperimentResult& result, ResultFormat format, const std::string& path) {
  const auto rows = result_rows(result);
  write_text(path, format == ResultFormat::csv ? to_csv(rows) : to_json_lines(rows));
}

void write_histogram(const ExperimentResult& result, const std::string& path) {
  write_text(path, histogram_csv(histogram_rows(result)));
}

}  // namespace erratic
