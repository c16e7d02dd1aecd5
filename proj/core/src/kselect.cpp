#include "harmvmd/kselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "harmvmd/error.hpp"
#include "harmvmd/parallel.hpp"

namespace harmvmd {

std::vector<std::size_t> prune_residual_modes(const VmdDecomposition& decomp,
                                              std::span<const double> input,
                                              const PruneConfig& cfg) {
  if (decomp.modes.empty()) throw InvalidInput("decomposition has no modes");
  if (!(cfg.energy_fraction_threshold > 0.0) || cfg.energy_fraction_threshold >= 1.0)
    throw InvalidInput("prune threshold must lie in (0, 1)");
  const double reference = signal_power(input);
  std::vector<std::size_t> kept;
  std::size_t strongest = 0;
  double strongest_energy = -1.0;
  for (std::size_t k = 0; k < decomp.modes.size(); ++k) {
    const double e = signal_power(decomp.modes[k]);
    if (e > strongest_energy) {
      strongest_energy = e;
      strongest = k;
    }
    if (e >= cfg.energy_fraction_threshold * reference) kept.push_back(k);
  }
  if (kept.empty()) kept.push_back(strongest);
  return kept;
}

KScore k_score(const VmdDecomposition& decomp, std::span<const double> input,
               const PruneConfig& cfg, const FbdOptions& fbd) {
  const auto kept = prune_residual_modes(decomp, input, cfg);
  KScore out;
  out.pruned = decomp.modes.size() - kept.size();
  out.score = std::numeric_limits<double>::infinity();
  for (std::size_t idx : kept) {
    const auto est = fractal_box_dimension(decomp.modes[idx], fbd);
    if (est.degenerate) ++out.degenerate_modes;
    out.score = std::min(out.score, est.dimension);
  }
  return out;
}

int choose_plateau_k(const std::vector<int>& k_values, const std::vector<double>& scores,
                     double epsilon, int window) {
  if (k_values.empty() || k_values.size() != scores.size())
    throw InvalidInput("sweep and score lists must be non-empty and of equal length");
  double best = std::numeric_limits<double>::infinity();
  for (double s : scores) best = std::min(best, s);
  if (!std::isfinite(best)) throw NumericalFailure("every K in the sweep failed");

  const double ceiling = best + epsilon;
  const int k_last = k_values.back();
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (!(scores[i] <= ceiling)) continue;
    const int horizon = std::min(k_values[i] + window, k_last);
    bool persists = true;
    for (std::size_t j = i + 1; j < k_values.size() && k_values[j] <= horizon; ++j)
      persists = persists && scores[j] <= ceiling;
    if (persists) return k_values[i];
  }
  // The argmin itself always persists within its own window unless a later K left the
  // band; fall back to it.
  return k_values[static_cast<std::size_t>(
      std::min_element(scores.begin(), scores.end()) - scores.begin())];
}

KSelectionTrace select_k(const SampledSignal& signal, const KSelectConfig& cfg) {
  if (cfg.k_min < 1 || cfg.k_min > cfg.k_max)
    throw InvalidInput("K range must satisfy 1 <= k_min <= k_max");
  if (!(cfg.plateau_epsilon >= 0.0)) throw InvalidInput("plateau epsilon must be >= 0");
  if (cfg.plateau_window < 0) throw InvalidInput("plateau window must be >= 0");
  if (cfg.threads < 1) throw InvalidInput("threads must be >= 1");

  const auto count = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
  struct Point {
    double score = std::numeric_limits<double>::infinity();
    int pruned = 0;
    bool converged = false;
    int degenerate = 0;
  };
  std::vector<Point> points(count);

  parallel_for(count, cfg.threads, [&](std::size_t i) {
    VmdParams params = cfg.vmd;
    params.k = cfg.k_min + static_cast<int>(i);
    try {
      const auto decomp = vmd_decompose(signal, params);
      const auto s = k_score(decomp, signal.samples(), cfg.prune, cfg.fbd);
      points[i] = {s.score, static_cast<int>(s.pruned), decomp.converged, s.degenerate_modes};
    } catch (const NumericalFailure&) {
      points[i] = Point{};
    }
  });

  KSelectionTrace trace;
  trace.plateau_epsilon = cfg.plateau_epsilon;
  for (std::size_t i = 0; i < count; ++i) {
    trace.k_values.push_back(cfg.k_min + static_cast<int>(i));
    trace.scores.push_back(points[i].score);
    trace.pruned_counts.push_back(points[i].pruned);
    trace.converged.push_back(points[i].converged);
    trace.degenerate_modes += points[i].degenerate;
  }
  trace.chosen_k = choose_plateau_k(trace.k_values, trace.scores, cfg.plateau_epsilon,
                                    cfg.plateau_window);
  trace.argmin_k = trace.k_values[static_cast<std::size_t>(
      std::min_element(trace.scores.begin(), trace.scores.end()) - trace.scores.begin())];
  return trace;
}

}  // namespace harmvmd
