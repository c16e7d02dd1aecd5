#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harmvmd/signal.hpp"

namespace harmvmd {

/// Reads a `t,value` CSV. The sample rate is 1 / median(dt) unless fs_override is
/// given; a rate within 1e-9 relative of an integer is snapped to it. t0 is the first
/// time stamp. Throws InvalidInput on malformed rows or non-increasing time.
SampledSignal read_signal_csv(std::istream& in, std::optional<double> fs_override = std::nullopt);
SampledSignal read_signal_csv(const std::string& path, std::optional<double> fs_override = std::nullopt);

/// Writes `t,value` rows in shortest round-trip form.
void write_signal_csv(std::ostream& out, const SampledSignal& signal);
void write_signal_csv(const std::string& path, const SampledSignal& signal);

/// Writes `t,<prefix>1..<prefix>K` columns, one row per sample.
void write_columns_csv(std::ostream& out, double fs, double t0_s,
                       const std::vector<std::vector<double>>& columns,
                       const std::string& prefix = "imf");

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace harmvmd
