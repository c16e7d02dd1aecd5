#include "harmvmd/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "harmvmd/error.hpp"

namespace harmvmd {

void VmdParams::validate() const {
  if (k < 1) throw InvalidInput("VMD mode count K must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("alpha must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be >= 0");
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
}

std::vector<double> init_center_frequencies(const VmdParams& params) {
  if (params.k < 1) throw InvalidInput("VMD mode count K must be >= 1");
  const auto k = static_cast<std::size_t>(params.k);
  std::vector<double> omega(k, 0.0);
  switch (params.init) {
    case VmdInit::zero:
      break;
    case VmdInit::uniform:
      for (std::size_t i = 0; i < k; ++i)
        omega[i] = (static_cast<double>(i) + 0.5) / (2.0 * static_cast<double>(k));
      break;
    case VmdInit::linear:
      for (std::size_t i = 0; i < k; ++i)
        omega[i] = static_cast<double>(i) / (2.0 * static_cast<double>(k));
      break;
    case VmdInit::random: {
      std::mt19937_64 rng(params.seed);
      std::uniform_real_distribution<double> draw(0.0, 0.5);
      for (auto& w : omega) {
        do {
          w = draw(rng);
        } while (w <= 0.0);
      }
      std::sort(omega.begin(), omega.end());
      break;
    }
  }
  if (params.dc) omega[0] = 0.0;
  return omega;
}

VmdSolver::VmdSolver(const SampledSignal& signal, const VmdParams& params)
    : params_(params), input_(signal.values()), sample_rate_hz_(signal.sample_rate_hz()) {
  params_.validate();
  const auto k = static_cast<std::size_t>(params_.k);
  if (input_.size() < 2 * k)
    throw InvalidInput("signal of " + std::to_string(input_.size()) +
                       " samples is too short for K = " + std::to_string(k));

  const std::vector<double> work = params_.mirror ? mirror_extend(input_) : input_;
  extended_len_ = work.size();
  const std::size_t half = extended_len_ / 2 + 1;

  auto full = dft_forward(work);
  f_hat_.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(half));
  omega_.resize(half);
  for (std::size_t j = 0; j < half; ++j)
    omega_[j] = static_cast<double>(j) / static_cast<double>(extended_len_);

  state_.mode_spectra.assign(k, std::vector<Complex>(half, Complex{}));
  state_.center_freqs = init_center_frequencies(params_);
  state_.lagrangian.assign(half, Complex{});
  sum_all_.assign(half, Complex{});
}

bool VmdSolver::step() {
  if (converged_) return true;
  const std::size_t k_count = state_.mode_spectra.size();
  const std::size_t half = f_hat_.size();
  double delta = 0.0;
  std::vector<Complex> previous(half);

  for (std::size_t k = 0; k < k_count; ++k) {
    auto& mode = state_.mode_spectra[k];
    previous = mode;
    const double wk = state_.center_freqs[k];

    double power = 0.0;
    double weighted = 0.0;
    double change = 0.0;
    double prev_norm = 0.0;
    for (std::size_t j = 0; j < half; ++j) {
      const Complex others = sum_all_[j] - previous[j];
      const double d = omega_[j] - wk;
      const Complex updated =
          (f_hat_[j] - others + 0.5 * state_.lagrangian[j]) / (1.0 + params_.alpha * d * d);
      mode[j] = updated;
      sum_all_[j] = others + updated;

      const double p = std::norm(updated);
      power += p;
      weighted += omega_[j] * p;
      change += std::norm(updated - previous[j]);
      prev_norm += std::norm(previous[j]);
    }

    if (!(params_.dc && k == 0) && power > 0.0) state_.center_freqs[k] = weighted / power;

    if (prev_norm > 0.0) {
      delta += change / prev_norm;
    } else if (change > 0.0) {
      delta = std::numeric_limits<double>::infinity();
    }
  }

  if (params_.tau > 0.0) {
    for (std::size_t j = 0; j < half; ++j)
      state_.lagrangian[j] += params_.tau * (f_hat_[j] - sum_all_[j]);
  }

  ++state_.iter;
  state_.last_delta = delta;
  bool finite = !std::isnan(delta);
  for (double w : state_.center_freqs) finite = finite && std::isfinite(w);
  if (!finite)
    throw NumericalFailure("VMD produced NaN at iteration " + std::to_string(state_.iter) +
                           " (K = " + std::to_string(k_count) + ")");

  converged_ = delta < params_.tol;
  return converged_;
}

VmdDecomposition VmdSolver::result() const {
  const std::size_t k_count = state_.mode_spectra.size();
  const std::size_t half = f_hat_.size();
  const std::size_t m = extended_len_;

  std::vector<std::size_t> order(k_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state_.center_freqs[a] < state_.center_freqs[b];
  });

  VmdDecomposition out;
  out.iterations = state_.iter;
  out.converged = converged_;
  out.last_delta = state_.last_delta;
  out.sample_rate_hz = sample_rate_hz_;

  std::vector<Complex> full(m);
  for (std::size_t idx : order) {
    const auto& half_bins = state_.mode_spectra[idx];
    // Hermitian completion of the half spectrum
    full[0] = Complex(half_bins[0].real(), 0.0);
    for (std::size_t j = 1; j < half; ++j) {
      full[j] = half_bins[j];
      if (m - j != j) full[m - j] = std::conj(half_bins[j]);
    }
    if (m % 2 == 0) full[m / 2] = Complex(half_bins[m / 2].real(), 0.0);

    auto time = dft_inverse(full);
    std::vector<double> mode(m);
    for (std::size_t i = 0; i < m; ++i) mode[i] = time[i].real();
    out.modes.push_back(params_.mirror ? crop_mirror(mode) : std::move(mode));
    out.center_freqs_hz.push_back(state_.center_freqs[idx] * sample_rate_hz_);
  }

  out.residual = input_;
  for (const auto& mode : out.modes)
    for (std::size_t i = 0; i < out.residual.size(); ++i) out.residual[i] -= mode[i];
  return out;
}

VmdDecomposition vmd_decompose(const SampledSignal& signal, const VmdParams& params) {
  VmdSolver solver(signal, params);
  for (int it = 0; it < params.max_iters; ++it) {
    if (solver.step()) break;
  }
  return solver.result();
}

}  // namespace harmvmd
