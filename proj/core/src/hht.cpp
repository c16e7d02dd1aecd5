#include "harmvmd/hht.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmvmd/error.hpp"
#include "harmvmd/spectral.hpp"

namespace harmvmd {

std::string to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::fundamental:
      return "fundamental";
    case ComponentKind::harmonic:
      return "harmonic";
    case ComponentKind::interharmonic:
      return "interharmonic";
  }
  return "unknown";
}

InstantaneousSeries instantaneous_attributes(std::span<const double> mode, double fs,
                                             const HhtConfig& cfg) {
  if (mode.size() < 8) throw InvalidInput("instantaneous attributes need at least 8 samples");
  if (!(fs > 0.0)) throw InvalidInput("sample rate must be positive");
  if (!(cfg.edge_trim_fraction >= 0.0) || cfg.edge_trim_fraction >= 0.5)
    throw InvalidInput("edge trim fraction must lie in [0, 0.5)");

  const std::size_t n = mode.size();
  InstantaneousSeries out;
  const auto trim = static_cast<std::size_t>(std::floor(cfg.edge_trim_fraction * static_cast<double>(n)));
  out.valid_range = {trim, n - trim};
  out.amplitude.assign(n, 0.0);
  out.frequency_hz.assign(n, 0.0);

  if (std::all_of(mode.begin(), mode.end(), [](double v) { return v == 0.0; })) {
    out.degenerate = true;
    return out;
  }

  const auto z = analytic_signal(mode);
  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.amplitude[i] = std::abs(z[i]);
    phase[i] = std::arg(z[i]);
  }
  // unwrap
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double offset = 0.0;
  double prev = phase[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double raw = phase[i];
    double step = raw - prev;
    if (step > std::numbers::pi) offset -= two_pi * std::ceil((step - std::numbers::pi) / two_pi);
    else if (step < -std::numbers::pi)
      offset += two_pi * std::ceil((-step - std::numbers::pi) / two_pi);
    prev = raw;
    phase[i] = raw + offset;
  }

  const double to_hz = fs / two_pi;
  out.frequency_hz[0] = (phase[1] - phase[0]) * to_hz;
  out.frequency_hz[n - 1] = (phase[n - 1] - phase[n - 2]) * to_hz;
  for (std::size_t i = 1; i + 1 < n; ++i)
    out.frequency_hz[i] = (phase[i + 1] - phase[i - 1]) * to_hz / 2.0;
  return out;
}

namespace {

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace

SupportInterval time_support(const InstantaneousSeries& series, double fs, const HhtConfig& cfg,
                             double t0_s) {
  if (!(fs > 0.0)) throw InvalidInput("sample rate must be positive");
  const auto range = series.valid_range;
  if (range.size() == 0 || range.end > series.amplitude.size())
    throw InvalidInput("instantaneous series has an empty or invalid valid range");

  SupportInterval out;
  out.indices = {range.begin, range.begin};
  out.start_s = out.end_s = t0_s + static_cast<double>(range.begin) / fs;

  const std::vector<double> window(series.amplitude.begin() + static_cast<std::ptrdiff_t>(range.begin),
                                   series.amplitude.begin() + static_cast<std::ptrdiff_t>(range.end));
  const double threshold = cfg.support_threshold * percentile(window, cfg.support_percentile);
  if (!(threshold > 0.0)) {
    out.degenerate = true;
    return out;
  }

  // runs of above-threshold samples, then bridge short gaps
  struct Run {
    std::size_t begin, end;
    double mass;
  };
  std::vector<Run> runs;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    const double a = series.amplitude[i];
    if (a <= threshold) continue;
    if (!runs.empty() && runs.back().end == i) {
      runs.back().end = i + 1;
      runs.back().mass += a;
    } else {
      runs.push_back({i, i + 1, a});
    }
  }
  if (runs.empty()) {
    out.degenerate = true;
    return out;
  }
  const auto max_gap = static_cast<std::size_t>(std::llround(cfg.support_gap_close_s * fs));
  std::vector<Run> merged{runs.front()};
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].begin - merged.back().end < max_gap) {
      merged.back().end = runs[r].end;
      merged.back().mass += runs[r].mass;
    } else {
      merged.push_back(runs[r]);
    }
  }
  const auto best = std::max_element(merged.begin(), merged.end(),
                                     [](const Run& a, const Run& b) { return a.mass < b.mass; });
  out.indices = {best->begin, best->end};
  // activity reaching a trimmed edge is taken to continue to the signal boundary
  if (out.indices.begin == range.begin) out.indices.begin = 0;
  if (out.indices.end == range.end) out.indices.end = series.amplitude.size();
  out.start_s = t0_s + static_cast<double>(out.indices.begin) / fs;
  out.end_s = t0_s + static_cast<double>(out.indices.end) / fs;
  return out;
}

Classification classify_component(double mean_frequency_hz, double fundamental_hz,
                                  double tolerance_hz) {
  if (!(fundamental_hz > 0.0)) throw InvalidInput("fundamental frequency must be positive");
  const double n = std::round(mean_frequency_hz / fundamental_hz);
  if (n >= 1.0 && std::abs(mean_frequency_hz - n * fundamental_hz) <= tolerance_hz) {
    const int order = static_cast<int>(n);
    return {order == 1 ? ComponentKind::fundamental : ComponentKind::harmonic, order};
  }
  return {ComponentKind::interharmonic, static_cast<int>(n)};
}

ComponentSummary summarize_mode(std::span<const double> mode, double fs, double t0_s,
                                const HhtConfig& cfg) {
  ComponentSummary out;
  const auto series = instantaneous_attributes(mode, fs, cfg);
  out.support = time_support(series, fs, cfg, t0_s);
  // averages stay inside the trimmed range even when the support was extended to the edges
  IndexRange span{std::max(out.support.indices.begin, series.valid_range.begin),
                  std::min(out.support.indices.end, series.valid_range.end)};
  if (out.support.degenerate || span.size() == 0) span = series.valid_range;
  double amp = 0.0;
  double freq = 0.0;
  for (std::size_t i = span.begin; i < span.end; ++i) {
    amp += series.amplitude[i];
    freq += series.frequency_hz[i];
  }
  const auto count = static_cast<double>(span.size());
  out.mean_amplitude_v = amp / count;
  out.mean_frequency_hz = std::clamp(freq / count, 0.0, fs / 2.0);
  out.classification =
      classify_component(out.mean_frequency_hz, cfg.fundamental_hz, cfg.harmonic_tolerance_hz);
  return out;
}

DetectionReport detect_harmonics(const SampledSignal& signal, const DetectConfig& cfg) {
  DetectionReport report;
  const auto x = signal.samples();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double variance = 0.0;
  for (double v : x) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(x.size());
  const double power = signal_power(x);
  if (!(variance > 1e-24 * std::max(power, 1e-300))) {
    report.degenerate = true;
    report.warnings.emplace_back("signal has no oscillatory content");
    return report;
  }

  if (cfg.fixed_k) {
    report.chosen_k = *cfg.fixed_k;
  } else {
    report.selection_trace = select_k(signal, cfg.selection);
    report.chosen_k = report.selection_trace.chosen_k;
    if (report.selection_trace.degenerate_modes > 0)
      report.warnings.emplace_back("degenerate (constant) modes met during K selection");
  }

  VmdParams params = cfg.selection.vmd;
  params.k = report.chosen_k;
  report.decomposition = vmd_decompose(signal, params);
  if (!report.decomposition.converged)
    report.warnings.emplace_back("VMD hit max_iters at the chosen K without meeting tol");

  const auto kept = prune_residual_modes(report.decomposition, x, cfg.selection.prune);
  // Boundary artifacts carry their energy in the trimmed edges; judge modes on the interior.
  const auto trim = static_cast<std::size_t>(
      std::floor(cfg.hht.edge_trim_fraction * static_cast<double>(x.size())));
  const auto interior = [&](std::span<const double> v) {
    return v.subspan(trim, v.size() - 2 * trim);
  };
  const double interior_power = signal_power(interior(x));
  for (std::size_t idx : kept) {
    const auto& mode = report.decomposition.modes[idx];
    if (signal_power(interior(mode)) <
        cfg.selection.prune.energy_fraction_threshold * interior_power) {
      report.warnings.push_back("mode " + std::to_string(idx) +
                                " dropped: energy confined to the signal edges");
      continue;
    }
    auto summary = summarize_mode(mode, signal.sample_rate_hz(), signal.t0_s(), cfg.hht);
    if (summary.mean_frequency_hz < cfg.hht.min_frequency_hz) continue;
    summary.source_mode_index = idx;
    summary.center_frequency_hz = report.decomposition.center_freqs_hz[idx];
    summary.energy_fraction = signal_power(mode) / power;
    report.components.push_back(summary);
  }
  std::stable_sort(report.components.begin(), report.components.end(),
                   [](const ComponentSummary& a, const ComponentSummary& b) {
                     return a.mean_frequency_hz < b.mean_frequency_hz;
                   });
  if (report.components.empty()) {
    report.degenerate = true;
    report.warnings.emplace_back("no oscillatory component survived pruning");
  }
  return report;
}

void attach_ground_truth(DetectionReport& report, std::span<const ToneSpec> truth) {
  report.errors.assign(report.components.size(), std::nullopt);
  report.unmatched_tones.clear();
  struct Pair {
    double distance;
    std::size_t tone, comp;
  };
  std::vector<Pair> pairs;
  for (std::size_t t = 0; t < truth.size(); ++t)
    for (std::size_t c = 0; c < report.components.size(); ++c)
      pairs.push_back({std::abs(report.components[c].mean_frequency_hz - truth[t].frequency_hz), t, c});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.distance < b.distance; });
  std::vector<bool> tone_used(truth.size(), false);
  for (const auto& p : pairs) {
    if (tone_used[p.tone] || report.errors[p.comp]) continue;
    tone_used[p.tone] = true;
    const auto& tone = truth[p.tone];
    const auto& comp = report.components[p.comp];
    ComponentError e;
    e.tone_index = p.tone;
    e.true_amplitude = tone.amplitude;
    e.true_frequency_hz = tone.frequency_hz;
    e.amplitude_rel_error = std::abs(comp.mean_amplitude_v - tone.amplitude) / tone.amplitude;
    e.frequency_rel_error =
        tone.frequency_hz > 0.0 ? p.distance / tone.frequency_hz : p.distance;
    report.errors[p.comp] = e;
  }
  for (std::size_t t = 0; t < truth.size(); ++t)
    if (!tone_used[t]) report.unmatched_tones.push_back(t);
}

}  // namespace harmvmd
