#include "harmvmd/fbd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harmvmd/error.hpp"

namespace harmvmd {
namespace {

double interpolate(std::span<const double> y, double pos) {
  const auto last = static_cast<double>(y.size() - 1);
  pos = std::clamp(pos, 0.0, last);
  const auto i0 = static_cast<std::size_t>(std::floor(pos));
  if (i0 + 1 >= y.size()) return y.back();
  const double frac = pos - static_cast<double>(i0);
  return y[i0] + frac * (y[i0 + 1] - y[i0]);
}

}  // namespace

std::vector<double> normalize_unit(std::span<const double> x) {
  if (x.empty()) return {};
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double range = *hi - *lo;
  std::vector<double> out(x.size(), 0.0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - *lo) / range;
  }
  return out;
}

std::int64_t box_count(std::span<const double> unit_x, double eps) {
  if (unit_x.size() < 2) throw InvalidInput("box counting needs at least 2 samples");
  if (!(eps > 0.0) || eps > 1.0) throw InvalidInput("box size must lie in (0, 1]");
  const auto last = static_cast<double>(unit_x.size() - 1);
  if (eps * last < 1.0)
    throw InvalidInput("box size " + std::to_string(eps) + " is below one sample spacing");

  const auto columns = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-9));
  std::int64_t total = 0;
  for (std::size_t c = 0; c < columns; ++c) {
    const double a = static_cast<double>(c) * eps * last;
    const double b = std::min(static_cast<double>(c + 1) * eps, 1.0) * last;
    double lo = interpolate(unit_x, a);
    double hi = lo;
    const double vb = interpolate(unit_x, b);
    lo = std::min(lo, vb);
    hi = std::max(hi, vb);
    const auto first = static_cast<std::size_t>(std::ceil(a));
    const auto stop = std::min(static_cast<std::size_t>(std::floor(b)), unit_x.size() - 1);
    for (std::size_t i = first; i <= stop; ++i) {
      lo = std::min(lo, unit_x[i]);
      hi = std::max(hi, unit_x[i]);
    }
    const double boxes = std::ceil((hi - lo) / eps - 1e-9);
    total += std::max<std::int64_t>(1, static_cast<std::int64_t>(boxes));
  }
  return total;
}

FbdEstimate fractal_box_dimension(std::span<const double> x, const FbdOptions& options) {
  if (x.size() < 64) throw InvalidInput("box dimension needs at least 64 samples");
  if (options.coarsest_level < 0 || options.min_samples_per_column < 1)
    throw InvalidInput("invalid box-dimension ladder");

  FbdEstimate est;
  const auto unit = normalize_unit(x);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  est.degenerate = !(*hi > *lo);

  int finest = options.coarsest_level;
  const auto per_column = static_cast<std::size_t>(options.min_samples_per_column);
  for (;;) {
    const std::size_t columns = std::size_t{1} << (finest + 1);
    if (columns * per_column > x.size() || columns > x.size() - 1) break;
    ++finest;
  }
  if (finest - options.coarsest_level + 1 < 3)
    throw InvalidInput("box-dimension ladder has fewer than 3 scales");

  for (int j = options.coarsest_level; j <= finest; ++j) {
    const double eps = std::ldexp(1.0, -j);
    est.curve.scales.push_back(eps);
    est.curve.counts.push_back(box_count(unit, eps));
  }
  if (est.degenerate) {
    est.dimension = 1.0;
    est.fit_r2 = 1.0;
    return est;
  }

  // least squares of ln N on ln(1/eps)
  const auto n = static_cast<double>(est.curve.scales.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < est.curve.scales.size(); ++i) {
    const double lx = -std::log(est.curve.scales[i]);
    const double ly = std::log(static_cast<double>(est.curve.counts[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cov = sxy - sx * sy / n;
  const double var_x = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  est.dimension = cov / var_x;
  est.fit_r2 = var_y > 0.0 ? std::clamp(cov * cov / (var_x * var_y), 0.0, 1.0) : 1.0;
  return est;
}

}  // namespace harmvmd
