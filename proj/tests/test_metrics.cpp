#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "smcipher/metrics.hpp"
#include "smcipher/synth.hpp"

using namespace smcipher;

TEST(Npcr, Examples) {
  const PixelGrid a(2, 8, {1, 2, 3, 4});
  EXPECT_EQ(npcr(a, a), 0.0);
  EXPECT_EQ(npcr(a, PixelGrid(2, 8, {5, 6, 7, 8})), 1.0);
  EXPECT_EQ(npcr(a, PixelGrid(2, 8, {1, 2, 3, 9})), 0.25);
  EXPECT_THROW(npcr(a, PixelGrid::filled(4, 8, 0)), contract_error);
}

TEST(Uaci, Examples) {
  const PixelGrid a(2, 8, {1, 2, 3, 4});
  EXPECT_EQ(uaci(a, a), 0.0);
  EXPECT_EQ(uaci(PixelGrid::filled(2, 8, 0), PixelGrid::filled(2, 8, 255)), 1.0);
  EXPECT_EQ(uaci(PixelGrid::filled(2, 8, 0), PixelGrid(2, 8, {0, 0, 0, 255})), 0.25);
  EXPECT_THROW(uaci(a, PixelGrid::filled(2, 16, 0)), contract_error);
}

TEST(NpcrUaci, SymmetricAndInUnitInterval) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 50; ++t) {
    const auto a = synth::uniform_random(16, rng());
    const auto b = synth::uniform_random(16, rng());
    EXPECT_EQ(npcr(a, b), npcr(b, a));
    EXPECT_EQ(uaci(a, b), uaci(b, a));
    EXPECT_GE(npcr(a, b), 0.0);
    EXPECT_LE(npcr(a, b), 1.0);
    EXPECT_GE(uaci(a, b), 0.0);
    EXPECT_LE(uaci(a, b), 1.0);
  }
}

TEST(NpcrUaci, IndependentUniformGridsHitClosedForm) {
  const double expected_uaci = oracle::uniform_uaci_expectation(8);
  EXPECT_NEAR(expected_uaci, 5592320.0 / (255.0 * 65536.0), 1e-12);
  double sum_npcr = 0, sum_uaci = 0;
  for (int t = 0; t < 50; ++t) {
    const auto a = synth::uniform_random(256, 1000 + 2 * t);
    const auto b = synth::uniform_random(256, 1001 + 2 * t);
    sum_npcr += npcr(a, b);
    sum_uaci += uaci(a, b);
  }
  EXPECT_NEAR(sum_npcr / 50, 1.0 - 1.0 / 256.0, 0.002);
  EXPECT_NEAR(sum_uaci / 50, expected_uaci, 0.002);
}

TEST(Correlation, GradientIsPerfectlyLinear) {
  const auto g = synth::gradient(64);
  EXPECT_NEAR(correlation(g, Direction::horizontal), 1.0, 1e-12);
  EXPECT_NEAR(correlation(g, Direction::diagonal), 1.0, 1e-12);
  // Vertical pairs of a column gradient are identical, also perfectly linear.
  EXPECT_NEAR(correlation(g, Direction::vertical), 1.0, 1e-12);
}

TEST(Correlation, ConstantImageIsDegenerate) {
  const auto w = synth::white(32);
  for (auto d : {Direction::horizontal, Direction::vertical, Direction::diagonal}) {
    EXPECT_THROW(correlation(w, d), degenerate_input_error);
  }
}

TEST(Correlation, NaturalImageIsStronglyCorrelated) {
  const auto img = synth::value_noise(512, 3);
  EXPECT_GT(correlation(img, Direction::horizontal), 0.9);
  EXPECT_GT(correlation(img, Direction::vertical), 0.9);
  EXPECT_GT(correlation(img, Direction::diagonal), 0.9);
}

TEST(Correlation, RandomImageIsUncorrelated) {
  const auto img = synth::uniform_random(512, 4);
  for (auto d : {Direction::horizontal, Direction::vertical, Direction::diagonal}) {
    EXPECT_LT(std::abs(correlation(img, d)), 0.01);
  }
}

TEST(Correlation, InvariantUnderAffineRescaling) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 20; ++t) {
    const auto img = synth::value_noise(32, rng(), 6);
    std::vector<PixelGrid::value_type> scaled(img.pixels().begin(), img.pixels().end());
    for (auto& v : scaled) v = static_cast<PixelGrid::value_type>(3 * v + 7);
    const PixelGrid big(32, 8, scaled);
    for (auto d : {Direction::horizontal, Direction::vertical, Direction::diagonal}) {
      EXPECT_NEAR(correlation(img, d), correlation(big, d), 1e-12);
    }
  }
}

TEST(Correlation, SamplingIsReproducibleAndClose) {
  const auto img = synth::value_noise(256, 5);
  const CorrelationSampling s{3000, 77};
  EXPECT_EQ(correlation(img, Direction::horizontal, s), correlation(img, Direction::horizontal, s));
  EXPECT_NEAR(correlation(img, Direction::horizontal, s), correlation(img, Direction::horizontal), 0.02);
  // A sample larger than the population uses all pairs.
  EXPECT_EQ(correlation(img, Direction::vertical, {1u << 30, 1}), correlation(img, Direction::vertical));
}

TEST(ChiSquare, Examples) {
  Histogram flat{std::vector<std::uint64_t>(256, 4)};
  EXPECT_EQ(chi_square_uniformity(flat), 0.0);
  Histogram spike{std::vector<std::uint64_t>(256, 0)};
  spike.counts[7] = 256;
  EXPECT_EQ(chi_square_uniformity(spike), 65280.0);
  EXPECT_THROW(chi_square_uniformity(Histogram{std::vector<std::uint64_t>(256, 0)}), contract_error);
}

TEST(ChiSquare, UniformRandomImagesUsuallyPass) {
  int below = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    below += chi_square_uniformity(histogram(synth::uniform_random(256, seed))) < oracle::kChiSquare255At001;
  }
  // Expected 99 of 100; allow the binomial tail.
  EXPECT_GE(below, 95);
}

TEST(AnalysisReport, KeyValueAndCsv) {
  const auto a = synth::uniform_random(16, 1);
  const auto b = synth::uniform_random(16, 2);
  const auto pair = analyze_pair(a, b);
  EXPECT_NE(pair.to_key_value().find("npcr="), std::string::npos);
  EXPECT_EQ(pair.csv_header(), "npcr,uaci\n");
  const auto row = pair.csv_row();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 1);

  const auto single = analyze_image(a);
  EXPECT_EQ(single.csv_header(), "corr_horizontal,corr_vertical,corr_diagonal,chi_square\n");
  const auto white = analyze_image(synth::white(8));
  EXPECT_FALSE(white.corr_horizontal);
  EXPECT_TRUE(white.chi_square);
}
