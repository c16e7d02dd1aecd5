#include <gtest/gtest.h>

#include <cmath>

#include "harmvmd/error.hpp"
#include "harmvmd/vmd.hpp"
#include "oracles.hpp"

using namespace harmvmd;

namespace {

SampledSignal make(const std::vector<double>& v, double fs = 4096.0) { return SampledSignal(v, fs); }

std::vector<double> sum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

TEST(Vmd, PureToneSingleMode) {
  const auto x = oracle::tone(1.0, 50.0, 0.0, 4096.0, 4096);
  VmdParams p;
  p.k = 1;
  const auto d = vmd_decompose(make(x), p);
  ASSERT_EQ(d.k(), 1u);
  EXPECT_NEAR(d.center_freqs_hz[0], 50.0, 1.0);  // one bin at fs / N = 1 Hz

  const std::size_t trim = x.size() / 20;
  double num = 0.0, den = 0.0;
  for (std::size_t i = trim; i < x.size() - trim; ++i) {
    num += (d.modes[0][i] - x[i]) * (d.modes[0][i] - x[i]);
    den += x[i] * x[i];
  }
  EXPECT_LT(std::sqrt(num / den), 1e-3);
}

TEST(Vmd, SeparatesTwoTones) {
  const auto x = sum(oracle::tone(1.0, 50.0, 0.0, 4096.0, 4096), oracle::tone(0.5, 250.0, 0.0, 4096.0, 4096));
  VmdParams p;
  p.k = 2;
  const auto d = vmd_decompose(make(x), p);
  EXPECT_NEAR(d.center_freqs_hz[0], 50.0, 1.0);
  EXPECT_NEAR(d.center_freqs_hz[1], 250.0, 1.0);
  EXPECT_GT(oracle::correlation(d.modes[1], oracle::tone(0.5, 250.0, 0.0, 4096.0, 4096)), 0.99);
}

TEST(Vmd, ModesAscendAndReconstruct) {
  const auto x = sum(sum(oracle::tone(1.0, 300.0, 0.0, 4096.0, 2048), oracle::tone(1.0, 40.0, 0.0, 4096.0, 2048)),
                     oracle::tone(0.3, 120.0, 0.0, 4096.0, 2048));
  VmdParams p;
  p.k = 3;
  p.init = VmdInit::random;
  p.seed = 5;
  const auto d = vmd_decompose(make(x), p);
  for (std::size_t k = 1; k < d.k(); ++k) EXPECT_LE(d.center_freqs_hz[k - 1], d.center_freqs_hz[k]);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = d.residual[i];
    for (const auto& m : d.modes) s += m[i];
    EXPECT_NEAR(s, x[i], 1e-12);
  }
}

TEST(Vmd, ScalingByTwoIsExact) {
  const auto x = sum(oracle::tone(1.0, 50.0, 0.0, 4096.0, 1024), oracle::tone(0.2, 130.0, 0.4, 4096.0, 1024));
  std::vector<double> x2(x);
  for (auto& v : x2) v *= 2.0;
  VmdParams p;
  p.k = 2;
  const auto a = vmd_decompose(make(x), p);
  const auto b = vmd_decompose(make(x2), p);
  ASSERT_EQ(a.iterations, b.iterations);
  for (std::size_t k = 0; k < a.k(); ++k) {
    EXPECT_EQ(a.center_freqs_hz[k], b.center_freqs_hz[k]);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(2.0 * a.modes[k][i], b.modes[k][i]);
  }
}

TEST(Vmd, Deterministic) {
  const auto p0 = oracle::random_vector(512, 11);
  VmdParams p;
  p.k = 3;
  const auto a = vmd_decompose(make(p0), p);
  const auto b = vmd_decompose(make(p0), p);
  EXPECT_EQ(a.modes, b.modes);
  EXPECT_EQ(a.center_freqs_hz, b.center_freqs_hz);
}

TEST(Vmd, InitialCenters) {
  VmdParams p;
  p.k = 4;
  p.init = VmdInit::uniform;
  EXPECT_EQ(init_center_frequencies(p), (std::vector<double>{0.0625, 0.1875, 0.3125, 0.4375}));
  p.init = VmdInit::linear;
  EXPECT_EQ(init_center_frequencies(p), (std::vector<double>{0.0, 0.125, 0.25, 0.375}));
  p.init = VmdInit::zero;
  EXPECT_EQ(init_center_frequencies(p), (std::vector<double>(4, 0.0)));
  p.init = VmdInit::random;
  const auto r = init_center_frequencies(p);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r[i], 0.0);
    EXPECT_LT(r[i], 0.5);
    if (i) EXPECT_LE(r[i - 1], r[i]);
  }
  EXPECT_EQ(r, init_center_frequencies(p));
  p.init = VmdInit::uniform;
  p.dc = true;
  EXPECT_EQ(init_center_frequencies(p)[0], 0.0);
}

TEST(Vmd, SolverStepsExposeState) {
  const auto x = oracle::tone(1.0, 50.0, 0.0, 4096.0, 512);
  VmdParams p;
  p.k = 2;
  VmdSolver solver(make(x), p);
  EXPECT_EQ(solver.state().iter, 0);
  solver.step();
  EXPECT_EQ(solver.state().iter, 1);
  EXPECT_EQ(solver.state().mode_spectra.size(), 2u);
  EXPECT_EQ(solver.state().center_freqs.size(), 2u);
  while (!solver.step() && solver.state().iter < p.max_iters) {
  }
  EXPECT_TRUE(solver.converged());
  EXPECT_EQ(solver.result().modes.front().size(), x.size());
}

TEST(Vmd, RejectsBadParams) {
  const auto x = oracle::tone(1.0, 50.0, 0.0, 4096.0, 256);
  VmdParams p;
  p.k = 0;
  EXPECT_THROW(vmd_decompose(make(x), p), InvalidInput);
  p.k = 2;
  p.alpha = 0.0;
  EXPECT_THROW(vmd_decompose(make(x), p), InvalidInput);
  p.alpha = 100.0;
  p.tau = -1.0;
  EXPECT_THROW(vmd_decompose(make(x), p), InvalidInput);
  p.tau = 0.0;
  p.k = 200;
  EXPECT_THROW(vmd_decompose(make(x), p), InvalidInput);
}

TEST(Vmd, NoMirrorAndDualAscentRun) {
  const auto x = sum(oracle::tone(1.0, 64.0, 0.0, 4096.0, 1024), oracle::tone(0.5, 512.0, 0.0, 4096.0, 1024));
  VmdParams p;
  p.k = 2;
  p.mirror = false;
  p.tau = 0.1;
  const auto d = vmd_decompose(make(x), p);
  EXPECT_NEAR(d.center_freqs_hz[0], 64.0, 4.0);
  EXPECT_NEAR(d.center_freqs_hz[1], 512.0, 4.0);
}

TEST(Vmd, InitExamples) {
  VmdParams p;
  p.k = 1;
  p.init = VmdInit::uniform;
  EXPECT_EQ(init_center_frequencies(p), (std::vector<double>{0.25}));
  p.k = 3;
  p.init = VmdInit::random;
  p.seed = 7;
  EXPECT_EQ(init_center_frequencies(p), init_center_frequencies(p));
}

TEST(Vmd, Eq12ThreeModes) {
  const auto pr = preset("eq12");
  const auto s = synth_multitone(pr.tones, pr.sample_rate_hz, pr.n_samples);
  VmdParams p;
  p.k = 3;
  const auto d = vmd_decompose(s, p);
  EXPECT_NEAR(d.center_freqs_hz[0], 3.0, 1.0);
  EXPECT_NEAR(d.center_freqs_hz[1], 28.0, 1.0);
  EXPECT_NEAR(d.center_freqs_hz[2], 271.0, 1.0);
}

TEST(Vmd, Eq14SevenModesOneSpurious) {
  const auto pr = preset("eq14");
  const auto s = synth_multitone(pr.tones, pr.sample_rate_hz, pr.n_samples);
  VmdParams p;
  p.k = 7;
  const auto d = vmd_decompose(s, p);
  const double truth[] = {50, 104, 117, 134, 147, 250};
  std::vector<bool> used(d.k(), false);
  for (double f : truth) {
    bool hit = false;
    for (std::size_t k = 0; k < d.k() && !hit; ++k) {
      if (!used[k] && std::abs(d.center_freqs_hz[k] - f) <= 1.0) used[k] = hit = true;
    }
    EXPECT_TRUE(hit) << f;
  }
  const double power = signal_power(s);
  for (std::size_t k = 0; k < d.k(); ++k) {
    if (!used[k]) EXPECT_LT(signal_power(d.modes[k]) / power, 0.02);
  }
}

TEST(Vmd, CentersStayInBand) {
  const auto x = oracle::random_vector(1024, 21);
  VmdParams p;
  p.k = 4;
  VmdSolver solver(make(x, 1000.0), p);
  for (int it = 0; it < 50 && !solver.step(); ++it) {
    for (double w : solver.state().center_freqs) {
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 0.5);
    }
  }
}
