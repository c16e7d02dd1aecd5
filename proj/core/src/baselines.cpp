#include "harmvmd/baselines.hpp"

#include <gsl/gsl_interp.h>

#include <cmath>
#include <memory>
#include <random>

#include "harmvmd/error.hpp"
#include "harmvmd/parallel.hpp"

namespace harmvmd {

void EmdConfig::validate() const {
  if (max_imfs < 1) throw InvalidInput("max_imfs must be at least 1");
  if (!(sift_sd_threshold > 0.0)) throw InvalidInput("sift SD threshold must be positive");
  if (max_sifts_per_imf < 1) throw InvalidInput("max_sifts_per_imf must be at least 1");
  if (ensemble_size < 1) throw InvalidInput("ensemble size must be at least 1");
  if (!(noise_std_fraction >= 0.0) || !std::isfinite(noise_std_fraction))
    throw InvalidInput("noise std fraction must be finite and non-negative");
  if (threads < 1) throw InvalidInput("threads must be at least 1");
}

namespace {

struct Extrema {
  std::vector<std::size_t> max_idx;
  std::vector<std::size_t> min_idx;
};

Extrema find_extrema(std::span<const double> x) {
  Extrema e;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (x[i] > x[i - 1] && x[i] >= x[i + 1]) e.max_idx.push_back(i);
    else if (x[i] < x[i - 1] && x[i] <= x[i + 1]) e.min_idx.push_back(i);
  }
  return e;
}

std::size_t zero_crossings(std::span<const double> x) {
  std::size_t zc = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if ((x[i] < 0.0 && x[i + 1] >= 0.0) || (x[i] >= 0.0 && x[i + 1] < 0.0)) ++zc;
  return zc;
}

struct InterpDeleter {
  void operator()(gsl_interp* p) const { gsl_interp_free(p); }
};
struct AccelDeleter {
  void operator()(gsl_interp_accel* p) const { gsl_interp_accel_free(p); }
};

// Natural cubic spline through the extrema, with the two extrema nearest each end
// reflected about the end samples.
std::vector<double> envelope(std::span<const double> x, const std::vector<std::size_t>& idx) {
  const std::size_t n = x.size();
  const double last = static_cast<double>(n - 1);
  const std::size_t m = idx.size();
  const std::size_t k = std::min<std::size_t>(2, m);

  std::vector<double> px, py;
  px.reserve(m + 2 * k);
  py.reserve(m + 2 * k);
  for (std::size_t j = k; j-- > 0;) {
    px.push_back(-static_cast<double>(idx[j]));
    py.push_back(x[idx[j]]);
  }
  for (auto i : idx) {
    px.push_back(static_cast<double>(i));
    py.push_back(x[i]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto i = idx[m - 1 - j];
    px.push_back(2.0 * last - static_cast<double>(i));
    py.push_back(x[i]);
  }

  std::unique_ptr<gsl_interp, InterpDeleter> interp(gsl_interp_alloc(gsl_interp_cspline, px.size()));
  std::unique_ptr<gsl_interp_accel, AccelDeleter> acc(gsl_interp_accel_alloc());
  if (!interp || !acc) throw NumericalFailure("spline allocation failed");
  gsl_interp_init(interp.get(), px.data(), py.data(), px.size());

  std::vector<double> env(n);
  for (std::size_t i = 0; i < n; ++i)
    env[i] = gsl_interp_eval(interp.get(), px.data(), py.data(), static_cast<double>(i), acc.get());
  return env;
}

bool imf_shape_ok(std::span<const double> h) {
  const auto e = find_extrema(h);
  const auto ext = static_cast<long>(e.max_idx.size() + e.min_idx.size());
  const auto zc = static_cast<long>(zero_crossings(h));
  return std::abs(ext - zc) <= 1;
}

std::vector<double> sift(std::vector<double> h, const EmdConfig& cfg) {
  for (int s = 0; s < cfg.max_sifts_per_imf; ++s) {
    const auto e = find_extrema(h);
    if (e.max_idx.empty() || e.min_idx.empty()) break;
    const auto upper = envelope(h, e.max_idx);
    const auto lower = envelope(h, e.min_idx);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double mean = 0.5 * (upper[i] + lower[i]);
      num += mean * mean;
      den += h[i] * h[i];
      h[i] -= mean;
    }
    if (!std::isfinite(num)) throw NumericalFailure("EMD sifting produced a non-finite envelope");
    const double sd = den > 0.0 ? num / den : 0.0;
    if (sd < cfg.sift_sd_threshold && imf_shape_ok(h)) break;
  }
  return h;
}

}  // namespace

ExtremaCount count_extrema(std::span<const double> x) {
  const auto e = find_extrema(x);
  return {e.max_idx.size(), e.min_idx.size(), zero_crossings(x)};
}

EmdResult emd(std::span<const double> x, const EmdConfig& cfg) {
  cfg.validate();
  if (x.size() < 16) throw InvalidInput("EMD needs at least 16 samples");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidInput("EMD input contains non-finite samples");

  EmdResult out;
  out.residual.assign(x.begin(), x.end());
  while (static_cast<int>(out.imfs.size()) < cfg.max_imfs) {
    const auto e = find_extrema(out.residual);
    if (e.max_idx.empty() || e.min_idx.empty() || e.max_idx.size() + e.min_idx.size() < 2) break;
    auto imf = sift(out.residual, cfg);
    for (std::size_t i = 0; i < imf.size(); ++i) out.residual[i] -= imf[i];
    out.imfs.push_back(std::move(imf));
  }
  return out;
}

EmdResult eemd(std::span<const double> x, const EmdConfig& cfg) {
  cfg.validate();
  if (x.size() < 16) throw InvalidInput("EMD needs at least 16 samples");
  const std::size_t n = x.size();

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double noise_std = cfg.noise_std_fraction * std::sqrt(var / static_cast<double>(n));

  const auto trials = static_cast<std::size_t>(cfg.ensemble_size);
  std::vector<EmdResult> runs(trials);
  parallel_for(trials, cfg.threads, [&](std::size_t t) {
    std::vector<double> noisy(x.begin(), x.end());
    if (noise_std > 0.0) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(t)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> gauss(0.0, noise_std);
      for (auto& v : noisy) v += gauss(rng);
    }
    runs[t] = emd(noisy, cfg);
  });

  std::size_t width = 0;
  for (const auto& r : runs) width = std::max(width, r.imfs.size());

  EmdResult out;
  out.imfs.assign(width, std::vector<double>(n, 0.0));
  out.residual.assign(n, 0.0);
  for (const auto& r : runs) {
    for (std::size_t j = 0; j < r.imfs.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) out.imfs[j][i] += r.imfs[j][i];
    for (std::size_t i = 0; i < n; ++i) out.residual[i] += r.residual[i];
  }
  const double scale = static_cast<double>(trials);
  for (auto& imf : out.imfs)
    for (auto& v : imf) v /= scale;
  for (auto& v : out.residual) v /= scale;
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("correlation needs equal-length inputs");
  if (a.empty()) return 0.0;
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::vector<MethodComparison> compare_methods(const SampledSignal& signal,
                                              std::span<const ToneSpec> truth,
                                              std::span<const MethodComponents> methods,
                                              const HhtConfig& hht, double match_correlation) {
  const double fs = signal.sample_rate_hz();
  const std::size_t n = signal.size();

  std::vector<std::vector<double>> refs;
  refs.reserve(truth.size());
  for (const auto& tone : truth)
    refs.push_back(synth_multitone(std::span(&tone, 1), fs, n, signal.t0_s()).values());

  std::vector<MethodComparison> table;
  for (const auto& m : methods) {
    MethodComparison row;
    row.method = m.method;
    row.component_count = m.components.size();

    // corr[c][t]
    std::vector<std::vector<double>> corr(m.components.size(), std::vector<double>(truth.size(), 0.0));
    for (std::size_t c = 0; c < m.components.size(); ++c) {
      if (m.components[c].size() != n) throw InvalidInput("component length differs from the signal");
      for (std::size_t t = 0; t < truth.size(); ++t)
        corr[c][t] = pearson_correlation(m.components[c], refs[t]);
    }

    for (std::size_t t = 0; t < truth.size(); ++t) {
      ToneMatch tm;
      tm.tone_index = t;
      tm.true_amplitude = truth[t].amplitude;
      tm.true_frequency_hz = truth[t].frequency_hz;
      for (std::size_t c = 0; c < m.components.size(); ++c) {
        if (!tm.component_index || corr[c][t] > tm.correlation) {
          tm.component_index = c;
          tm.correlation = corr[c][t];
        }
      }
      if (tm.component_index) {
        const auto s = summarize_mode(m.components[*tm.component_index], fs, signal.t0_s(), hht);
        tm.amplitude_rel_error = std::abs(s.mean_amplitude_v - tm.true_amplitude) / tm.true_amplitude;
        tm.frequency_rel_error =
            std::abs(s.mean_frequency_hz - tm.true_frequency_hz) / tm.true_frequency_hz;
        tm.matched = tm.correlation >= match_correlation;
      }
      if (tm.matched) ++row.matched_count;
      row.tones.push_back(tm);
    }

    for (std::size_t c = 0; c < m.components.size(); ++c) {
      bool hit = false;
      for (std::size_t t = 0; t < truth.size(); ++t) hit = hit || corr[c][t] >= match_correlation;
      if (!hit) ++row.spurious_count;
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace harmvmd
