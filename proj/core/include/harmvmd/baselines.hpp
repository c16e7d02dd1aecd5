#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harmvmd/hht.hpp"
#include "harmvmd/signal.hpp"

namespace harmvmd {

struct EmdConfig {
  int max_imfs = 10;
  double sift_sd_threshold = 0.3;
  int max_sifts_per_imf = 50;
  int ensemble_size = 100;          ///< EEMD only
  double noise_std_fraction = 0.2;  ///< EEMD only, relative to the input std
  std::uint64_t seed = 0;
  int threads = 1;                  ///< EEMD trials

  void validate() const;
};

struct EmdResult {
  std::vector<std::vector<double>> imfs;  ///< highest frequency first
  std::vector<double> residual;
};

/// Local extrema counts of a series (strict on one side to tolerate flat tops).
struct ExtremaCount {
  std::size_t maxima = 0;
  std::size_t minima = 0;
  std::size_t zero_crossings = 0;
};
ExtremaCount count_extrema(std::span<const double> x);

/// Standard sifting EMD. Sifting of one IMF stops when the normalized squared change
/// between successive sifts drops below sift_sd_threshold and the candidate satisfies
/// |#extrema - #zero crossings| <= 1, or after max_sifts_per_imf. Extraction stops once
/// the residual has no maximum or no minimum left. Needs at least 16 samples.
EmdResult emd(std::span<const double> x, const EmdConfig& cfg = {});
inline EmdResult emd(const SampledSignal& s, const EmdConfig& cfg = {}) {
  return emd(s.samples(), cfg);
}

/// Ensemble EMD: average of per-trial IMFs over noisy copies of the input. Trial t
/// draws its noise from an engine seeded by (seed, t). Shorter IMF lists are padded
/// with zero IMFs before averaging.
EmdResult eemd(std::span<const double> x, const EmdConfig& cfg = {});
inline EmdResult eemd(const SampledSignal& s, const EmdConfig& cfg = {}) {
  return eemd(s.samples(), cfg);
}

/// Pearson correlation; 0 when either side has zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct MethodComponents {
  std::string method;
  std::vector<std::vector<double>> components;
};

struct ToneMatch {
  std::size_t tone_index = 0;
  double true_amplitude = 0.0;
  double true_frequency_hz = 0.0;
  std::optional<std::size_t> component_index;  ///< best-correlated component, if any
  double correlation = 0.0;
  double amplitude_rel_error = 0.0;
  double frequency_rel_error = 0.0;
  bool matched = false;  ///< correlation >= match threshold
};

struct MethodComparison {
  std::string method;
  std::vector<ToneMatch> tones;
  std::size_t component_count = 0;
  std::size_t matched_count = 0;
  std::size_t spurious_count = 0;  ///< components below the threshold against every tone
};

/// Scores each method's components against the ground-truth tones. Each tone is
/// rendered alone on the signal's time grid; its best component is the one with the
/// highest correlation, and amplitude / frequency errors come from that component's
/// Hilbert summary over its support.
std::vector<MethodComparison> compare_methods(const SampledSignal& signal,
                                              std::span<const ToneSpec> truth,
                                              std::span<const MethodComponents> methods,
                                              const HhtConfig& hht = {},
                                              double match_correlation = 0.9);

}  // namespace harmvmd
