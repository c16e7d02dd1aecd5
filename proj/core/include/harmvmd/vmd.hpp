#pragma once

#include <cstdint>
#include <vector>

#include "harmvmd/signal.hpp"
#include "harmvmd/spectral.hpp"

namespace harmvmd {

/// Center-frequency initialization, in cycles/sample.
///   zero    -> all 0
///   uniform -> (i + 0.5) / (2K), midpoints of K equal sub-bands of [0, 0.5]
///   linear  -> i / (2K), K equispaced points starting at DC
///   random  -> K sorted uniform draws in (0, 0.5), deterministic per seed
enum class VmdInit { zero, uniform, linear, random };

struct VmdParams {
  int k = 1;
  /// Bandwidth penalty. Each mode is Wiener-filtered by 1 / (1 + alpha (w - w_k)^2)
  /// with w in cycles/sample.
  double alpha = 4096.0;
  double tau = 0.0;       ///< dual ascent step; 0 disables the Lagrangian update
  bool dc = false;        ///< pin the first center frequency to 0
  VmdInit init = VmdInit::linear;
  std::uint64_t seed = 0;  ///< used by VmdInit::random
  double tol = 1e-10;
  int max_iters = 500;
  bool mirror = true;  ///< solve on the mirror-extended signal and crop afterwards

  /// Throws InvalidInput when a field is out of range.
  void validate() const;
};

/// Iterate state of the ADMM solver. Spectra hold bins 0..M/2 of the (extended) input.
struct SolverState {
  std::vector<std::vector<Complex>> mode_spectra;
  std::vector<double> center_freqs;  ///< cycles/sample, in [0, 0.5]
  std::vector<Complex> lagrangian;
  int iter = 0;
  double last_delta = 0.0;
};

struct VmdDecomposition {
  std::vector<std::vector<double>> modes;  ///< ascending center frequency
  std::vector<double> center_freqs_hz;
  std::vector<double> residual;  ///< input minus the sum of modes
  int iterations = 0;
  bool converged = false;
  double last_delta = 0.0;
  double sample_rate_hz = 1.0;

  [[nodiscard]] std::size_t k() const noexcept { return modes.size(); }
};

/// Initial center frequencies in cycles/sample (see VmdInit). With dc set the first
/// entry is forced to 0.
std::vector<double> init_center_frequencies(const VmdParams& params);

/// Single-threaded ADMM solver exposing its iterate for inspection.
class VmdSolver {
 public:
  VmdSolver(const SampledSignal& signal, const VmdParams& params);

  /// Runs one sweep over all modes plus the dual update. Returns true once converged.
  /// Throws NumericalFailure if a NaN appears.
  bool step();
  [[nodiscard]] bool converged() const noexcept { return converged_; }
  [[nodiscard]] const SolverState& state() const noexcept { return state_; }
  /// Sorted, time-domain modes cropped back to the input length.
  [[nodiscard]] VmdDecomposition result() const;

 private:
  VmdParams params_;
  std::vector<double> input_;
  double sample_rate_hz_;
  std::size_t extended_len_ = 0;
  std::vector<Complex> f_hat_;   // half spectrum of the (extended) input
  std::vector<double> omega_;    // bin frequencies, cycles/sample
  std::vector<Complex> sum_all_; // running sum of mode spectra
  SolverState state_;
  bool converged_ = false;
};

VmdDecomposition vmd_decompose(const SampledSignal& signal, const VmdParams& params);

}  // namespace harmvmd
