#include "harmvmd/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "harmvmd/error.hpp"

namespace harmvmd {
namespace {

// FFTW planning is not thread-safe; execution on a finished plan is. Plans are created
// once per (length, direction) under a lock and never destroyed. FFTW_UNALIGNED keeps
// the chosen codelets independent of buffer alignment, so results are bit-reproducible.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw NumericalFailure("FFTW could not plan a transform");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<Complex> run(std::span<const Complex> x, int sign) {
  if (x.size() < 2) throw InvalidInput("DFT needs at least 2 samples");
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(x.size());
  fftw_plan plan = PlanCache::instance().get(x.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<Complex> dft_forward(std::span<const Complex> x) { return run(x, FFTW_FORWARD); }

std::vector<Complex> dft_forward(std::span<const double> x) {
  std::vector<Complex> c(x.begin(), x.end());
  return run(c, FFTW_FORWARD);
}

std::vector<Complex> dft_inverse(std::span<const Complex> spectrum) {
  auto out = run(spectrum, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

ComplexSpectrum dft_forward(const SampledSignal& signal) {
  return {dft_forward(signal.samples()), signal.sample_rate_hz()};
}

std::vector<Complex> analytic_signal(std::span<const double> x) {
  if (x.size() < 4) throw InvalidInput("analytic signal needs at least 4 samples");
  const std::size_t n = x.size();
  auto bins = dft_forward(x);
  // bin 0 (and bin n/2 for even n) unchanged, positive bins doubled, negative bins zeroed
  const std::size_t half = n / 2;
  const bool even = (n % 2 == 0);
  const std::size_t last_doubled = even ? half - 1 : half;
  for (std::size_t k = 1; k <= last_doubled; ++k) bins[k] *= 2.0;
  for (std::size_t k = last_doubled + 1 + (even ? 1 : 0); k < n; ++k) bins[k] = 0.0;
  return dft_inverse(bins);
}

std::vector<double> mirror_extend(std::span<const double> x) {
  if (x.size() < 2) throw InvalidInput("mirror extension needs at least 2 samples");
  const std::size_t n = x.size();
  const std::size_t pad = mirror_pad(n);
  std::vector<double> y;
  y.reserve(n + 2 * pad);
  for (std::size_t i = pad; i-- > 0;) y.push_back(x[i]);
  y.insert(y.end(), x.begin(), x.end());
  for (std::size_t i = 0; i < pad; ++i) y.push_back(x[n - 1 - i]);
  return y;
}

std::vector<double> crop_mirror(std::span<const double> y) {
  if (y.size() < 2) throw InvalidInput("cannot crop a series shorter than 2 samples");
  // extended length L = n + 2 floor(n/2): even L <-> even n
  const std::size_t n = (y.size() % 2 == 0) ? y.size() / 2 : (y.size() + 1) / 2;
  const std::size_t pad = mirror_pad(n);
  return {y.begin() + static_cast<std::ptrdiff_t>(pad),
          y.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

SampledSignal mirror_extend(const SampledSignal& x) {
  const double t0 = x.t0_s() - static_cast<double>(mirror_pad(x.size())) / x.sample_rate_hz();
  return SampledSignal(mirror_extend(x.samples()), x.sample_rate_hz(), t0);
}

SampledSignal crop_mirror(const SampledSignal& y) {
  auto cropped = crop_mirror(y.samples());
  const double t0 = y.t0_s() + static_cast<double>(mirror_pad(cropped.size())) / y.sample_rate_hz();
  return SampledSignal(std::move(cropped), y.sample_rate_hz(), t0);
}

}  // namespace harmvmd
