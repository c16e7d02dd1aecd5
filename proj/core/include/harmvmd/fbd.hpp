#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace harmvmd {

/// Box counts N(eps) at a ladder of decreasing box edges (unit-square units).
struct BoxCountCurve {
  std::vector<double> scales;
  std::vector<std::int64_t> counts;
};

struct FbdEstimate {
  double dimension = 1.0;
  double fit_r2 = 1.0;
  BoxCountCurve curve;
  bool degenerate = false;  ///< constant input; dimension set to 1 by convention
  /// Outside the soft band [0.9, 2.1] expected for graphs of bounded functions.
  [[nodiscard]] bool out_of_band() const noexcept { return dimension < 0.9 || dimension > 2.1; }
};

struct FbdOptions {
  int coarsest_level = 2;         ///< eps_max = 2^-coarsest_level
  int min_samples_per_column = 4; ///< finest eps keeps at least this many samples per column
};

/// Min-max maps x into [0, 1]. A constant input maps to all zeros.
std::vector<double> normalize_unit(std::span<const double> x);

/// Covers the piecewise-linear graph of a unit-normalized series (time spans [0, 1])
/// with a grid of eps x eps boxes, column by column. Each column contributes
/// max(1, ceil(vertical extent / eps)) boxes, the extent including the interpolated
/// curve values at the column edges.
std::int64_t box_count(std::span<const double> unit_x, double eps);

/// Box-counting dimension: least-squares slope of ln N(eps) against ln(1/eps)
/// over the dyadic ladder eps = 2^-j, j = coarsest_level .. j_max with
/// 2^j_max <= n / min_samples_per_column. Needs at least 64 samples.
FbdEstimate fractal_box_dimension(std::span<const double> x, const FbdOptions& options = {});

}  // namespace harmvmd
