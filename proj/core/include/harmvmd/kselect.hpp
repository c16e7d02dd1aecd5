#pragma once

#include <vector>

#include "harmvmd/fbd.hpp"
#include "harmvmd/signal.hpp"
#include "harmvmd/vmd.hpp"

namespace harmvmd {

struct PruneConfig {
  /// Modes with mean-square energy below this fraction of the input's are residual-like.
  double energy_fraction_threshold = 1e-3;
};

struct KSelectConfig {
  int k_min = 1;
  int k_max = 10;
  VmdParams vmd;  ///< k is overwritten for each sweep point
  PruneConfig prune;
  FbdOptions fbd;
  double plateau_epsilon = 0.05;
  int plateau_window = 2;
  int threads = 1;
};

struct KSelectionTrace {
  std::vector<int> k_values;
  std::vector<double> scores;  ///< +inf for a K whose decomposition failed
  std::vector<int> pruned_counts;
  std::vector<bool> converged;
  int chosen_k = 0;
  int argmin_k = 0;  ///< K of the lowest score, logged alongside the plateau choice
  double plateau_epsilon = 0.05;
  int degenerate_modes = 0;  ///< modes whose box dimension was flagged degenerate
};

/// Indices (into decomp.modes) of modes carrying at least the threshold fraction of
/// the input energy. Never empty: falls back to the most energetic mode.
std::vector<std::size_t> prune_residual_modes(const VmdDecomposition& decomp,
                                              std::span<const double> input,
                                              const PruneConfig& cfg = {});

struct KScore {
  double score = 0.0;
  std::size_t pruned = 0;
  int degenerate_modes = 0;
};

/// Minimum box dimension over retained modes.
KScore k_score(const VmdDecomposition& decomp, std::span<const double> input,
               const PruneConfig& cfg = {}, const FbdOptions& fbd = {});

/// Plateau-onset choice on an already scored sweep: the smallest K whose score, and the
/// scores of the next `window` K values (clipped to the sweep), are all within epsilon
/// of the sweep minimum. Infinite scores never qualify.
int choose_plateau_k(const std::vector<int>& k_values, const std::vector<double>& scores,
                     double epsilon, int window = 2);

/// Runs VMD for each K in [k_min, k_max], scores it and picks the plateau onset.
/// Throws NumericalFailure when every K fails.
KSelectionTrace select_k(const SampledSignal& signal, const KSelectConfig& cfg);

}  // namespace harmvmd
