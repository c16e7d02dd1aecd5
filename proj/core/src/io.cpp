#include "harmvmd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "harmvmd/error.hpp"

namespace harmvmd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidInput("line " + std::to_string(line) + ": not a finite number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw NumericalFailure("could not format number");
  return {buf, ptr};
}

SampledSignal read_signal_csv(std::istream& in, std::optional<double> fs_override) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> t, x;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (row != "t,value") throw InvalidInput("expected header 't,value', got '" + std::string(row) + "'");
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected two columns");
    t.push_back(parse_number(row.substr(0, comma), lineno));
    x.push_back(parse_number(row.substr(comma + 1), lineno));
  }
  if (!header_seen) throw InvalidInput("empty signal file");
  if (x.size() < 2) throw InvalidInput("signal file needs at least two samples");

  std::vector<double> dt(t.size() - 1);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    dt[i] = t[i + 1] - t[i];
    if (!(dt[i] > 0.0)) throw InvalidInput("time stamps must be strictly increasing");
  }

  double fs = 0.0;
  if (fs_override) {
    if (!(*fs_override > 0.0) || !std::isfinite(*fs_override)) throw InvalidInput("--fs must be positive");
    fs = *fs_override;
  } else {
    const auto mid = dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2);
    std::nth_element(dt.begin(), mid, dt.end());
    double median = *mid;
    if (dt.size() % 2 == 0) {
      const double lower = *std::max_element(dt.begin(), mid);
      median = 0.5 * (median + lower);
    }
    fs = 1.0 / median;
    const double rounded = std::round(fs);
    if (rounded > 0.0 && std::abs(fs - rounded) <= 1e-9 * rounded) fs = rounded;
  }
  return SampledSignal(std::move(x), fs, t.front());
}

SampledSignal read_signal_csv(const std::string& path, std::optional<double> fs_override) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_signal_csv(in, fs_override);
}

void write_signal_csv(std::ostream& out, const SampledSignal& signal) {
  out << "t,value\n";
  for (std::size_t i = 0; i < signal.size(); ++i)
    out << format_double(signal.time_at(i)) << ',' << format_double(signal.values()[i]) << '\n';
}

void write_signal_csv(const std::string& path, const SampledSignal& signal) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  write_signal_csv(out, signal);
}

void write_columns_csv(std::ostream& out, double fs, double t0_s,
                       const std::vector<std::vector<double>>& columns, const std::string& prefix) {
  out << 't';
  for (std::size_t k = 0; k < columns.size(); ++k) out << ',' << prefix << (k + 1);
  out << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    out << format_double(t0_s + static_cast<double>(i) / fs);
    for (const auto& c : columns) out << ',' << format_double(c[i]);
    out << '\n';
  }
}

}  // namespace harmvmd
