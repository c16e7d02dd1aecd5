#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "harmvmd/error.hpp"
#include "harmvmd/hht.hpp"
#include "oracles.hpp"

using namespace harmvmd;

TEST(Instantaneous, PureTone) {
  const auto x = oracle::tone(0.7, 50.0, 0.0, 4096.0, 4096);
  const auto s = instantaneous_attributes(x, 4096.0);
  EXPECT_EQ(s.valid_range.begin, 204u);
  EXPECT_EQ(s.valid_range.end, 4096u - 204u);
  for (std::size_t i = s.valid_range.begin; i < s.valid_range.end; ++i) {
    EXPECT_NEAR(s.amplitude[i], 0.7, 1e-6);
    EXPECT_NEAR(s.frequency_hz[i], 50.0, 1e-3);
  }
}

TEST(Instantaneous, ChirpFollowsLine) {
  // phase 2 pi (10 t + 5 t^2): frequency 10 + 10 t over one second
  const double fs = 1024.0;
  std::vector<double> x(1024);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / fs;
    x[i] = std::cos(2.0 * std::numbers::pi * (10.0 * t + 5.0 * t * t));
  }
  const auto s = instantaneous_attributes(x, fs);
  for (std::size_t i = s.valid_range.begin; i < s.valid_range.end; ++i) {
    const double expected = 10.0 + 10.0 * static_cast<double>(i) / fs;
    EXPECT_NEAR(s.frequency_hz[i], expected, 0.02 * expected) << i;
  }
}

TEST(Instantaneous, ZeroModeIsDegenerate) {
  const std::vector<double> z(64, 0.0);
  const auto s = instantaneous_attributes(z, 100.0);
  EXPECT_TRUE(s.degenerate);
  EXPECT_TRUE(time_support(s, 100.0).degenerate);
}

TEST(Support, GatedToneInterval) {
  const auto x = oracle::tone(2.0, 119.0, 0.0, 4096.0, 4096, 0.2, 0.5);
  const auto s = instantaneous_attributes(x, 4096.0);
  const auto sup = time_support(s, 4096.0);
  EXPECT_FALSE(sup.degenerate);
  EXPECT_NEAR(sup.start_s, 0.2, 0.02);
  EXPECT_NEAR(sup.end_s, 0.5, 0.02);
}

TEST(Support, ContinuousToneSpansWindow) {
  const auto x = oracle::tone(1.0, 50.0, 0.0, 4096.0, 4096);
  const auto sup = time_support(instantaneous_attributes(x, 4096.0), 4096.0, {}, 1.0);
  EXPECT_DOUBLE_EQ(sup.start_s, 1.0);
  EXPECT_DOUBLE_EQ(sup.end_s, 2.0);
}

TEST(Support, LargestMassSegmentWins) {
  std::vector<double> x = oracle::tone(1.0, 100.0, 0.0, 1000.0, 1000, 0.1, 0.2);
  const auto y = oracle::tone(1.0, 100.0, 0.0, 1000.0, 1000, 0.5, 0.8);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  const auto sup = time_support(instantaneous_attributes(x, 1000.0), 1000.0);
  EXPECT_NEAR(sup.start_s, 0.5, 0.02);
  EXPECT_NEAR(sup.end_s, 0.8, 0.02);
}

TEST(Classify, Table) {
  EXPECT_EQ(classify_component(50.0).kind, ComponentKind::fundamental);
  EXPECT_EQ(classify_component(52.4).kind, ComponentKind::fundamental);
  EXPECT_EQ(classify_component(250.0), (Classification{ComponentKind::harmonic, 5}));
  EXPECT_EQ(classify_component(1549.2), (Classification{ComponentKind::harmonic, 31}));
  EXPECT_EQ(classify_component(117.0).kind, ComponentKind::interharmonic);
  EXPECT_EQ(classify_component(105.4).kind, ComponentKind::interharmonic);
  EXPECT_EQ(to_string(ComponentKind::harmonic), "harmonic");
  EXPECT_THROW(classify_component(50.0, 0.0), InvalidInput);
}

TEST(Summary, AveragesOverSupport) {
  const auto x = oracle::tone(3.0, 250.0, 0.0, 4096.0, 4096, 0.6, 1.0);
  const auto s = summarize_mode(x, 4096.0, 0.0, {});
  EXPECT_NEAR(s.mean_frequency_hz, 250.0, 0.5);
  EXPECT_NEAR(s.mean_amplitude_v, 3.0, 0.1);
  EXPECT_EQ(s.classification.order, 5);
}

TEST(Detect, SilentSignalIsDegenerate) {
  const SampledSignal z(std::vector<double>(1024, 0.0), 1024.0);
  const auto r = detect_harmonics(z, {});
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.components.empty());
}

TEST(Detect, FixedKTwoTonesWithTruth) {
  std::vector<ToneSpec> tones{{1.0, 50.0, 0.0}, {0.3, 175.0, 0.0}};
  const auto s = synth_multitone(tones, 4096.0, 4096);
  DetectConfig cfg;
  cfg.fixed_k = 2;
  auto r = detect_harmonics(s, cfg);
  ASSERT_EQ(r.components.size(), 2u);
  attach_ground_truth(r, tones);
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_TRUE(r.unmatched_tones.empty());
  EXPECT_EQ(r.errors[1]->tone_index, 1u);
  EXPECT_LT(r.errors[1]->frequency_rel_error, 0.01);
  EXPECT_LT(r.errors[1]->amplitude_rel_error, 0.02);
  EXPECT_EQ(r.components[1].classification.kind, ComponentKind::interharmonic);
}

TEST(Detect, UnmatchedToneReported) {
  std::vector<ToneSpec> tones{{1.0, 50.0, 0.0}};
  const auto s = synth_multitone(tones, 4096.0, 4096);
  DetectConfig cfg;
  cfg.fixed_k = 1;
  auto r = detect_harmonics(s, cfg);
  std::vector<ToneSpec> truth{{1.0, 50.0, 0.0}, {0.2, 300.0, 0.0}};
  attach_ground_truth(r, truth);
  EXPECT_EQ(r.unmatched_tones, (std::vector<std::size_t>{1}));
}

TEST(Instantaneous, HalfAmplitudeHarmonic) {
  const auto x = oracle::tone(0.5, 250.0, 0.0, 4096.0, 4096);
  const auto s = summarize_mode(x, 4096.0, 0.0, {});
  EXPECT_NEAR(s.mean_amplitude_v, 0.5, 0.0025);
  EXPECT_NEAR(s.mean_frequency_hz, 250.0, 0.5);
}

TEST(Instantaneous, ZeroSignalReportsZeros) {
  const std::vector<double> z(256, 0.0);
  const auto s = instantaneous_attributes(z, 256.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    EXPECT_EQ(s.amplitude[i], 0.0);
    EXPECT_EQ(s.frequency_hz[i], 0.0);
  }
}

TEST(Classify, TableValues) {
  EXPECT_EQ(classify_component(49.89).kind, ComponentKind::fundamental);
  EXPECT_EQ(classify_component(250.8), (Classification{ComponentKind::harmonic, 5}));
  EXPECT_EQ(classify_component(117.78).kind, ComponentKind::interharmonic);
}

TEST(Classify, StableUnderSmallPerturbation) {
  for (double f : {49.0, 101.2, 117.78, 251.9, 349.3}) {
    const auto base = classify_component(f);
    const double n = std::round(f / 50.0);
    const double margin = 2.5 - std::abs(f - n * 50.0);
    if (margin <= 0.0) continue;
    for (double d : {-0.99, -0.5, 0.5, 0.99}) EXPECT_EQ(classify_component(f + d * margin), base) << f;
  }
}

TEST(Detect, DcOnlyIsDegenerate) {
  const SampledSignal dc(std::vector<double>(2048, 1.0), 4096.0);
  const auto r = detect_harmonics(dc, {});
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.components.empty());
}

TEST(Detect, EnergyAccounting) {
  for (const auto* name : {"eq14", "eq15"}) {
    const auto pr = preset(name);
    const auto s = synth_multitone(pr.tones, pr.sample_rate_hz, pr.n_samples);
    const auto r = detect_harmonics(s, {});
    double acc = 0.0;
    for (const auto& c : r.components) {
      const double frac = c.support.length_s() / s.duration_s();
      acc += 0.5 * c.mean_amplitude_v * c.mean_amplitude_v * frac;
      EXPECT_GE(c.mean_frequency_hz, 0.0);
      EXPECT_LE(c.mean_frequency_hz, s.sample_rate_hz() / 2.0);
    }
    EXPECT_NEAR(acc, signal_power(s), 0.15 * signal_power(s)) << name;
  }
}
