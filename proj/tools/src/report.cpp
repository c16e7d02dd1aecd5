#include "report.hpp"

#include <cmath>

namespace harmvmd::report {

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string to_string(VmdInit init) {
  switch (init) {
    case VmdInit::zero:
      return "zero";
    case VmdInit::uniform:
      return "uniform";
    case VmdInit::linear:
      return "linear";
    case VmdInit::random:
      return "random";
  }
  return "unknown";
}

ordered_json to_json(const ToneSpec& t) {
  return {{"amplitude", t.amplitude},
          {"frequency_hz", t.frequency_hz},
          {"phase_rad", t.phase_rad},
          {"t_start_s", number(t.t_start_s)},
          {"t_end_s", number(t.t_end_s)}};
}

ordered_json to_json(const VmdParams& p) {
  return {{"k", p.k},         {"alpha", p.alpha},        {"tau", p.tau},
          {"dc", p.dc},       {"init", to_string(p.init)}, {"seed", p.seed},
          {"tol", p.tol},     {"max_iters", p.max_iters}, {"mirror", p.mirror}};
}

ordered_json to_json(const FbdOptions& o) {
  return {{"coarsest_level", o.coarsest_level}, {"min_samples_per_column", o.min_samples_per_column}};
}

ordered_json to_json(const PruneConfig& p) {
  return {{"energy_fraction_threshold", p.energy_fraction_threshold}};
}

ordered_json to_json(const KSelectConfig& c) {
  auto vmd = to_json(c.vmd);
  vmd.erase("k");
  return {{"k_min", c.k_min},
          {"k_max", c.k_max},
          {"vmd", vmd},
          {"prune", to_json(c.prune)},
          {"fbd", to_json(c.fbd)},
          {"plateau_epsilon", c.plateau_epsilon},
          {"plateau_window", c.plateau_window}};
}

ordered_json to_json(const HhtConfig& c) {
  return {{"edge_trim_fraction", c.edge_trim_fraction},
          {"support_threshold", c.support_threshold},
          {"support_percentile", c.support_percentile},
          {"support_gap_close_s", c.support_gap_close_s},
          {"fundamental_hz", c.fundamental_hz},
          {"harmonic_tolerance_hz", c.harmonic_tolerance_hz},
          {"min_frequency_hz", c.min_frequency_hz}};
}

ordered_json to_json(const EmdConfig& c) {
  return {{"max_imfs", c.max_imfs},
          {"sift_sd_threshold", c.sift_sd_threshold},
          {"max_sifts_per_imf", c.max_sifts_per_imf},
          {"ensemble_size", c.ensemble_size},
          {"noise_std_fraction", c.noise_std_fraction},
          {"seed", c.seed}};
}

ordered_json decomposition_meta(const VmdDecomposition& d) {
  ordered_json centers = ordered_json::array();
  for (double f : d.center_freqs_hz) centers.push_back(f);
  ordered_json energy = ordered_json::array();
  for (const auto& m : d.modes) energy.push_back(signal_power(m));
  return {{"k", d.k()},
          {"center_frequencies_hz", centers},
          {"mode_power", energy},
          {"residual_power", d.residual.empty() ? ordered_json() : ordered_json(signal_power(d.residual))},
          {"iterations", d.iterations},
          {"converged", d.converged},
          {"last_delta", number(d.last_delta)},
          {"sample_rate_hz", d.sample_rate_hz}};
}

ordered_json to_json(const KSelectionTrace& t) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < t.k_values.size(); ++i) {
    rows.push_back({{"k", t.k_values[i]},
                    {"score", number(t.scores[i])},
                    {"pruned_count", t.pruned_counts[i]},
                    {"converged", static_cast<bool>(t.converged[i])}});
  }
  return {{"chosen_k", t.chosen_k},
          {"argmin_k", t.argmin_k},
          {"plateau_epsilon", t.plateau_epsilon},
          {"degenerate_modes", t.degenerate_modes},
          {"sweep", rows}};
}

ordered_json to_json(const ComponentSummary& c) {
  ordered_json j = {{"mean_frequency_hz", c.mean_frequency_hz},
                    {"mean_amplitude_v", c.mean_amplitude_v},
                    {"center_frequency_hz", c.center_frequency_hz},
                    {"kind", to_string(c.classification.kind)},
                    {"order", c.classification.order},
                    {"support_start_s", c.support.start_s},
                    {"support_end_s", c.support.end_s},
                    {"support_degenerate", c.support.degenerate},
                    {"source_mode", c.source_mode_index},
                    {"energy_fraction", c.energy_fraction}};
  return j;
}

ordered_json to_json(const DetectionReport& r) {
  ordered_json comps = ordered_json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    auto c = to_json(r.components[i]);
    if (i < r.errors.size()) {
      if (const auto& e = r.errors[i]) {
        c["truth"] = {{"tone_index", e->tone_index},
                      {"frequency_hz", e->true_frequency_hz},
                      {"amplitude", e->true_amplitude},
                      {"frequency_rel_error", e->frequency_rel_error},
                      {"amplitude_rel_error", e->amplitude_rel_error}};
      } else {
        c["truth"] = nullptr;
      }
    }
    comps.push_back(c);
  }
  ordered_json j = {{"chosen_k", r.chosen_k},
                    {"degenerate", r.degenerate},
                    {"components", comps},
                    {"selection", to_json(r.selection_trace)},
                    {"decomposition", decomposition_meta(r.decomposition)},
                    {"unmatched_tones", r.unmatched_tones},
                    {"warnings", r.warnings}};
  return j;
}

ordered_json to_json(const FbdEstimate& e) {
  ordered_json curve = ordered_json::array();
  for (std::size_t i = 0; i < e.curve.scales.size(); ++i)
    curve.push_back({{"eps", e.curve.scales[i]}, {"count", e.curve.counts[i]}});
  return {{"dimension", e.dimension},
          {"fit_r2", number(e.fit_r2)},
          {"degenerate", e.degenerate},
          {"out_of_band", e.out_of_band()},
          {"curve", curve}};
}

ordered_json to_json(const MethodComparison& m) {
  ordered_json tones = ordered_json::array();
  for (const auto& t : m.tones) {
    tones.push_back({{"tone_index", t.tone_index},
                     {"true_frequency_hz", t.true_frequency_hz},
                     {"true_amplitude", t.true_amplitude},
                     {"component", t.component_index ? ordered_json(*t.component_index) : ordered_json()},
                     {"correlation", t.correlation},
                     {"amplitude_rel_error", t.amplitude_rel_error},
                     {"frequency_rel_error", t.frequency_rel_error},
                     {"matched", t.matched}});
  }
  return {{"method", m.method},
          {"component_count", m.component_count},
          {"matched_count", m.matched_count},
          {"spurious_count", m.spurious_count},
          {"tones", tones}};
}

}  // namespace harmvmd::report
