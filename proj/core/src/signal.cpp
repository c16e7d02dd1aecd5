#include "harmvmd/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "harmvmd/error.hpp"

namespace harmvmd {

SampledSignal::SampledSignal(std::vector<double> samples, double sample_rate_hz, double t0_s)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), t0_s_(t0_s) {
  if (samples_.empty()) throw InvalidInput("signal has no samples");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
    throw InvalidInput("sample rate must be positive and finite");
  if (!std::isfinite(t0_s_)) throw InvalidInput("start time must be finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw InvalidInput("sample " + std::to_string(i) + " is not finite");
  }
}

SampledSignal synth_multitone(std::span<const ToneSpec> tones, double sample_rate_hz,
                              std::size_t n_samples, double t0_s) {
  if (tones.empty()) throw InvalidInput("tone list is empty");
  if (n_samples < 2) throw InvalidInput("need at least 2 samples");
  if (!(sample_rate_hz > 0.0)) throw InvalidInput("sample rate must be positive");
  const double nyquist = sample_rate_hz / 2.0;
  for (const auto& tone : tones) {
    if (!(tone.amplitude >= 0.0) || !std::isfinite(tone.amplitude))
      throw InvalidInput("tone amplitude must be finite and non-negative");
    if (!(tone.frequency_hz >= 0.0) || tone.frequency_hz >= nyquist)
      throw InvalidInput("tone frequency " + std::to_string(tone.frequency_hz) +
                         " Hz is outside [0, Nyquist)");
    if (!std::isfinite(tone.phase_rad)) throw InvalidInput("tone phase must be finite");
    if (!(tone.t_start_s < tone.t_end_s)) throw InvalidInput("tone gate has t_start >= t_end");
  }

  std::vector<double> out(n_samples, 0.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = t0_s + static_cast<double>(i) / sample_rate_hz;
    double acc = 0.0;
    for (const auto& tone : tones) {
      if (t >= tone.t_start_s && t < tone.t_end_s)
        acc += tone.amplitude *
               std::sin(2.0 * std::numbers::pi * tone.frequency_hz * t + tone.phase_rad);
    }
    out[i] = acc;
  }
  return SampledSignal(std::move(out), sample_rate_hz, t0_s);
}

double signal_power(std::span<const double> samples) {
  if (samples.empty()) throw InvalidInput("power of an empty sequence");
  double acc = 0.0;
  for (double v : samples) acc += v * v;
  return acc / static_cast<double>(samples.size());
}

SampledSignal add_awgn(const SampledSignal& signal, const NoiseSpec& noise) {
  if (std::isinf(noise.snr_db) && noise.snr_db > 0) return signal;
  if (std::isnan(noise.snr_db)) throw InvalidInput("SNR is NaN");
  const double power = signal_power(signal);
  if (!(power > 0.0)) throw InvalidInput("SNR is undefined for a zero-power signal");

  const double sigma = std::sqrt(power / std::pow(10.0, noise.snr_db / 10.0));
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> out(signal.values());
  for (double& v : out) v += gauss(rng);
  return SampledSignal(std::move(out), signal.sample_rate_hz(), signal.t0_s());
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Preset make_eq12() {
  // cos(6 pi t), 1/4 sin(56 pi t), 1/16 cos(542 pi t)
  return {{{1.0, 3.0, kHalfPi}, {0.25, 28.0, 0.0}, {1.0 / 16.0, 271.0, kHalfPi}}, 4096.0, 4096};
}

Preset make_eq14() {
  return {{{1.0, 50.0, 0.0},
           {0.3, 104.0, 0.0},
           {0.4, 117.0, 0.0},
           {0.2, 134.0, 0.0},
           {0.2, 147.0, 0.0},
           {0.5, 250.0, 0.0}},
          4096.0,
          4096};
}

Preset make_eq15() {
  return {{{1.0, 15.0, 0.0, 0.0, 1.0},
           {4.0, 50.0, 0.0, 0.0, 1.0},
           {2.0, 119.0, 0.0, 0.2, 0.5},
           {3.0, 250.0, 0.0, 0.6, 1.0}},
          4096.0,
          4096};
}

// Ten cycles at 10240 Hz with a transient 105 Hz burst and 5th/7th/31st harmonics.
Preset make_substation() {
  return {{{1.0, 50.0, 0.0},
           {0.15, 105.0, 0.0, 0.06, 0.14},
           {0.2, 250.0, 0.0},
           {0.1, 350.0, 0.0},
           {0.05, 1550.0, 0.0}},
          10240.0,
          2048};
}

}  // namespace

Preset preset(std::string_view name) {
  if (name == "eq12") return make_eq12();
  if (name == "eq14") return make_eq14();
  if (name == "eq15") return make_eq15();
  if (name == "substation") return make_substation();
  throw InvalidInput("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string_view> preset_names() { return {"eq12", "eq14", "eq15", "substation"}; }

}  // namespace harmvmd
