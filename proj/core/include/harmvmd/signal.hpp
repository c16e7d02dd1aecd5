#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace harmvmd {

/// Uniformly sampled real waveform. Sample i sits at t0_s + i / sample_rate_hz.
class SampledSignal {
 public:
  SampledSignal(std::vector<double> samples, double sample_rate_hz, double t0_s = 0.0);

  [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return samples_; }
  [[nodiscard]] double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  [[nodiscard]] double t0_s() const noexcept { return t0_s_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] double time_at(std::size_t i) const noexcept {
    return t0_s_ + static_cast<double>(i) / sample_rate_hz_;
  }
  [[nodiscard]] double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

 private:
  std::vector<double> samples_;
  double sample_rate_hz_;
  double t0_s_;
};

/// One gated sinusoid A sin(2 pi f t + phi), active on [t_start_s, t_end_s).
struct ToneSpec {
  double amplitude = 1.0;
  double frequency_hz = 50.0;
  double phase_rad = 0.0;
  double t_start_s = -std::numeric_limits<double>::infinity();
  double t_end_s = std::numeric_limits<double>::infinity();
};

/// White Gaussian noise at a given SNR. An infinite snr_db means "no noise".
struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

SampledSignal synth_multitone(std::span<const ToneSpec> tones, double sample_rate_hz,
                              std::size_t n_samples, double t0_s = 0.0);

/// Adds zero-mean Gaussian noise with variance P_signal / 10^(snr_db / 10).
/// Power is measured over the whole clean window.
SampledSignal add_awgn(const SampledSignal& signal, const NoiseSpec& noise);

/// Mean of squared samples.
double signal_power(std::span<const double> samples);
inline double signal_power(const SampledSignal& s) { return signal_power(s.samples()); }

/// Named synthetic test signals.
struct Preset {
  std::vector<ToneSpec> tones;
  double sample_rate_hz;
  std::size_t n_samples;
};

/// Known names: eq12, eq14, eq15, substation. Throws InvalidInput otherwise.
Preset preset(std::string_view name);
std::vector<std::string_view> preset_names();

}  // namespace harmvmd
