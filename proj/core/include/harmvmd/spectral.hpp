#pragma once

#include <complex>
#include <span>
#include <vector>

#include "harmvmd/signal.hpp"

namespace harmvmd {

using Complex = std::complex<double>;

/// Full-length DFT of a sampled series.
struct ComplexSpectrum {
  std::vector<Complex> bins;
  double sample_rate_hz = 1.0;

  [[nodiscard]] double bin_frequency_hz(std::size_t k) const noexcept {
    return static_cast<double>(k) * sample_rate_hz / static_cast<double>(bins.size());
  }
};

// DFT convention used throughout: X[k] = sum_n x[n] e^{-2 pi i k n / N} (unnormalized),
// x[n] = (1/N) sum_k X[k] e^{+2 pi i k n / N}.
std::vector<Complex> dft_forward(std::span<const Complex> x);
std::vector<Complex> dft_forward(std::span<const double> x);
std::vector<Complex> dft_inverse(std::span<const Complex> spectrum);
ComplexSpectrum dft_forward(const SampledSignal& signal);

/// Discrete analytic signal x + j H{x} built by single-sided doubling of the spectrum.
std::vector<Complex> analytic_signal(std::span<const double> x);
inline std::vector<Complex> analytic_signal(const SampledSignal& s) {
  return analytic_signal(s.samples());
}

/// Half-length reflection on both sides: [1,2,3,4] -> [2,1,1,2,3,4,4,3].
std::vector<double> mirror_extend(std::span<const double> x);
/// Inverse of mirror_extend; the original length is implied by the extended length.
std::vector<double> crop_mirror(std::span<const double> y);
SampledSignal mirror_extend(const SampledSignal& x);
SampledSignal crop_mirror(const SampledSignal& y);

/// Offset of the original samples inside a mirror-extended series of an n-sample signal.
constexpr std::size_t mirror_pad(std::size_t n) noexcept { return n / 2; }

}  // namespace harmvmd
