#include <gtest/gtest.h>

#include <sstream>

#include "harmvmd/error.hpp"
#include "harmvmd/io.hpp"
#include "oracles.hpp"

using namespace harmvmd;

TEST(Csv, RoundTripIsExact) {
  const auto p = preset("eq15");
  const auto s = add_awgn(synth_multitone(p.tones, p.sample_rate_hz, p.n_samples), {38.0, 1});
  std::stringstream buf;
  write_signal_csv(buf, s);
  const auto back = read_signal_csv(buf);
  EXPECT_EQ(back.values(), s.values());
  EXPECT_EQ(back.sample_rate_hz(), 4096.0);
  EXPECT_EQ(back.t0_s(), 0.0);
}

TEST(Csv, NonDyadicRateSnaps) {
  const auto s = SampledSignal(oracle::random_vector(2048, 1), 10240.0, 0.5);
  std::stringstream buf;
  write_signal_csv(buf, s);
  const auto back = read_signal_csv(buf);
  EXPECT_EQ(back.sample_rate_hz(), 10240.0);
  EXPECT_EQ(back.t0_s(), 0.5);
}

TEST(Csv, MedianStepIgnoresJitter) {
  std::stringstream buf("t,value\n0,1\n0.01,2\n0.02,3\n0.0305,4\n0.04,5\n");
  const auto s = read_signal_csv(buf);
  EXPECT_DOUBLE_EQ(s.sample_rate_hz(), 100.0);
  EXPECT_EQ(s.size(), 5u);
}

TEST(Csv, FsOverride) {
  std::stringstream buf("t,value\n0,1\n1,2\n2,3\n");
  EXPECT_EQ(read_signal_csv(buf, 50.0).sample_rate_hz(), 50.0);
}

TEST(Csv, Malformed) {
  auto bad = [](const std::string& text) {
    std::stringstream buf(text);
    return read_signal_csv(buf);
  };
  EXPECT_THROW(bad(""), InvalidInput);
  EXPECT_THROW(bad("time,v\n0,1\n1,2\n"), InvalidInput);
  EXPECT_THROW(bad("t,value\n0,1\n"), InvalidInput);
  EXPECT_THROW(bad("t,value\n0,1\n0,2\n"), InvalidInput);
  EXPECT_THROW(bad("t,value\n0,1\n1,abc\n"), InvalidInput);
  EXPECT_THROW(bad("t,value\n0,1\n1,2,3\n"), InvalidInput);
  EXPECT_THROW(bad("t,value\n0,1\n1,nan\n"), InvalidInput);
  EXPECT_THROW(read_signal_csv(std::string("/nonexistent/x.csv")), InvalidInput);
}

TEST(Csv, CrLfAccepted) {
  std::stringstream buf("t,value\r\n0,1\r\n0.5,2\r\n");
  EXPECT_EQ(read_signal_csv(buf).sample_rate_hz(), 2.0);
}

TEST(Csv, ColumnsLayout) {
  std::stringstream buf;
  write_columns_csv(buf, 2.0, 0.0, {{1.0, 2.0}, {3.0, 4.0}});
  EXPECT_EQ(buf.str(), "t,imf1,imf2\n0,1,3\n0.5,2,4\n");
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(v)), v);
}
