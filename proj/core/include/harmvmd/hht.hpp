#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harmvmd/kselect.hpp"
#include "harmvmd/signal.hpp"
#include "harmvmd/vmd.hpp"

namespace harmvmd {

/// Half-open index interval [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  [[nodiscard]] std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
};

struct InstantaneousSeries {
  std::vector<double> amplitude;
  std::vector<double> frequency_hz;
  IndexRange valid_range;  ///< edges trimmed against Hilbert end effects
  bool degenerate = false; ///< all-zero input
};

struct SupportInterval {
  double start_s = 0.0;
  double end_s = 0.0;
  IndexRange indices;
  bool degenerate = false;  ///< nothing above threshold
  [[nodiscard]] double length_s() const noexcept { return end_s - start_s; }
};

enum class ComponentKind { fundamental, harmonic, interharmonic };

struct Classification {
  ComponentKind kind = ComponentKind::interharmonic;
  int order = 0;  ///< nearest multiple of the fundamental; >= 2 for harmonics
  bool operator==(const Classification&) const = default;
};

std::string to_string(ComponentKind kind);

struct ComponentSummary {
  double mean_amplitude_v = 0.0;
  double mean_frequency_hz = 0.0;
  double center_frequency_hz = 0.0;  ///< VMD center of the source mode
  SupportInterval support;
  Classification classification;
  std::size_t source_mode_index = 0;
  double energy_fraction = 0.0;  ///< mode mean-square over input mean-square
};

struct HhtConfig {
  double edge_trim_fraction = 0.05;
  double support_threshold = 0.25;     ///< fraction of the amplitude percentile
  double support_percentile = 95.0;
  double support_gap_close_s = 0.04;
  double fundamental_hz = 50.0;
  double harmonic_tolerance_hz = 2.5;
  double min_frequency_hz = 1.0;       ///< slower modes are treated as DC/trend and dropped
};

/// Amplitude |z| and central-difference frequency of the unwrapped analytic phase.
InstantaneousSeries instantaneous_attributes(std::span<const double> mode, double fs,
                                             const HhtConfig& cfg = {});

/// Active interval of a component: samples of the valid range whose amplitude exceeds
/// support_threshold x the support_percentile amplitude, with gaps shorter than
/// support_gap_close_s bridged. When several disjoint segments remain, the one with
/// the largest amplitude mass is returned.
SupportInterval time_support(const InstantaneousSeries& series, double fs,
                             const HhtConfig& cfg = {}, double t0_s = 0.0);

/// fundamental / harmonic(n) when within tolerance of n * f0, interharmonic otherwise.
Classification classify_component(double mean_frequency_hz, double fundamental_hz = 50.0,
                                  double tolerance_hz = 2.5);

struct ComponentError {
  std::size_t tone_index = 0;
  double true_amplitude = 0.0;
  double true_frequency_hz = 0.0;
  double amplitude_rel_error = 0.0;
  double frequency_rel_error = 0.0;
};

struct DetectionReport {
  std::vector<ComponentSummary> components;  ///< ascending mean frequency
  int chosen_k = 0;
  KSelectionTrace selection_trace;
  VmdDecomposition decomposition;
  /// Per component, filled when ground truth is supplied; nullopt for components no
  /// tone was assigned to.
  std::vector<std::optional<ComponentError>> errors;
  std::vector<std::size_t> unmatched_tones;
  bool degenerate = false;
  std::vector<std::string> warnings;
};

struct DetectConfig {
  KSelectConfig selection;
  HhtConfig hht;
  std::optional<int> fixed_k;  ///< bypasses the K sweep when set
};

/// Mean amplitude and frequency of one mode over its detected support.
ComponentSummary summarize_mode(std::span<const double> mode, double fs, double t0_s,
                                const HhtConfig& cfg);

/// Full pipeline: K sweep, decomposition at the chosen K, residual pruning, Hilbert
/// attributes and classification of every retained mode.
DetectionReport detect_harmonics(const SampledSignal& signal, const DetectConfig& cfg);

/// Assigns each ground-truth tone to the closest-in-frequency unused component and
/// fills report.errors / report.unmatched_tones.
void attach_ground_truth(DetectionReport& report, std::span<const ToneSpec> truth);

}  // namespace harmvmd
