#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace linvol;
using linvol::testing::figure1;

namespace {

const char* kPillowcase = "A A B B\nC C";  // four poles, twelve nodes
const char* kGenusOne = "A A\nB C B C D D";

std::vector<double> randomPositive(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  for (auto& x : v) x = 0.01 + uniformOpen(rng);
  return v;
}

}  // namespace

TEST(Hilbert, Examples) {
  EXPECT_NEAR(hilbertDistance(std::vector<double>{1, 2}, std::vector<double>{2, 1}), 2 * std::log(2.0), 1e-15);
  EXPECT_NEAR(hilbertDistance(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}), 0, 1e-15);
  std::vector<Rational> x{1, 2, 5}, y{3, 1, 1};
  EXPECT_NEAR(static_cast<double>(hilbertDistance(x, y)), std::log(15.0), 1e-15);
  EXPECT_THROW(hilbertDistance(std::vector<double>{1, 0}, std::vector<double>{1, 1}), NonPositiveInput);
  EXPECT_THROW(hilbertDistance(std::vector<double>{1, 2}, std::vector<double>{1}), ParameterMismatch);
}

TEST(Hilbert, IsAProjectiveMetric) {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    auto x = randomPositive(rng, 5), y = randomPositive(rng, 5), z = randomPositive(rng, 5);
    double dxy = hilbertDistance(x, y);
    EXPECT_NEAR(dxy, hilbertDistance(y, x), 1e-12);
    EXPECT_LE(dxy, hilbertDistance(x, z) + hilbertDistance(z, y) + 1e-12);
    auto sx = x;
    for (auto& t : sx) t *= 7.5;
    EXPECT_NEAR(hilbertDistance(sx, y), dxy, 1e-12);
  }
}

TEST(Hilbert, Diameter) {
  EXPECT_TRUE(std::isinf(projectiveDiameter(BigMatrix::identity(3))));
  BigMatrix ones(2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1;
  EXPECT_EQ(projectiveDiameter(ones), 0);
  BigMatrix b(2);
  b(0, 0) = b(1, 1) = 2;
  b(0, 1) = b(1, 0) = 1;
  EXPECT_NEAR(static_cast<double>(projectiveDiameter(b)), 2 * std::log(2.0), 1e-15);
}

TEST(Hilbert, PositiveCycleContracts) {
  auto cyc = findPositiveCycle(figure1());
  ASSERT_TRUE(cyc.has_value());
  const auto& B = cyc->product;
  const long double diam = projectiveDiameter(B);
  ASSERT_TRUE(std::isfinite(static_cast<double>(diam)));
  const long double k = std::tanh(diam / 4);  // Birkhoff's contraction coefficient
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rational> x(5), y(5);
    for (auto& t : x) t = Rational(randomBits(rng, 20) + 1);
    for (auto& t : y) t = Rational(randomBits(rng, 20) + 1);
    const long double before = hilbertDistance(x, y);
    const long double after = hilbertDistance(B.apply(x), B.apply(y));
    ASSERT_LE(after, k * before + 1e-15L);
    ASSERT_LE(after, diam + 1e-15L);
  }
}

TEST(Cocycle, FrameFollowsTheTransposedProduct) {
  auto pi = GeneralizedPermutation::parse(kGenusOne);
  ClassGraph g(pi);
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    auto exact = sampleAdmissibleRational(pi, rng, 40);
    std::vector<Extended> lambda;
    for (const auto& x : exact) lambda.push_back(static_cast<Extended>(x.get_d()));
    auto s = initialState<Extended>(g, pi, lambda, pi.size());
    for (int k = 0; k < 3; ++k) renormalize(g, s, 0);
    ASSERT_EQ(s.zorich, 3u);
    auto z = zorichPath(pi, exact, 3);
    ASSERT_EQ(s.elementary, z.path.length());
    ASSERT_EQ(g.cls.nodes[static_cast<std::size_t>(s.node)], z.path.endPerm);
    // frame vector i started at e_i, so it is now row i of the product
    for (std::size_t i = 0; i < pi.size(); ++i)
      for (std::size_t j = 0; j < pi.size(); ++j) EXPECT_EQ(static_cast<double>(s.frame[i][j]), z.path.product(i, j).get_d());
    // the lengths are the normalised exact ones
    Rational total = 0;
    for (const auto& x : z.lengths) total += x;
    for (std::size_t a = 0; a < pi.size(); ++a) EXPECT_NEAR(static_cast<double>(s.lambda[a]), Rational(z.lengths[a] / total).get_d(), 1e-12);
  }
}

TEST(Cocycle, PeriodSkippingMatchesStepByStep) {
  auto pi = GeneralizedPermutation::parse(kGenusOne);
  ClassGraph g(pi);
  Rng rng(44);
  std::size_t longest = 0;
  for (int t = 0; t < 50; ++t) {
    auto exact = sampleAdmissibleRational(pi, rng, 24);
    std::vector<Extended> lambda;
    for (const auto& x : exact) lambda.push_back(static_cast<Extended>(x.get_d()));
    auto s = initialState<Extended>(g, pi, lambda, 0);
    auto z = zorichPath(pi, exact, 10, 100000000);
    for (std::size_t k = 0; k < z.runs.size(); ++k) {
      const std::size_t before = s.elementary;
      renormalize(g, s, 0, 100000000);
      ASSERT_EQ(s.elementary - before, z.runs[k].runLength);
      longest = std::max(longest, z.runs[k].runLength);
    }
    EXPECT_EQ(g.cls.nodes[static_cast<std::size_t>(s.node)], z.path.endPerm);
  }
  // long enough to pass through whole periods
  EXPECT_GT(longest, 100u);
}

TEST(Lyapunov, PillowcaseIsSymmetricAndReproducible) {
  auto pi = GeneralizedPermutation::parse(kPillowcase);
  LyapunovConfig cfg;
  cfg.steps = 2000;
  cfg.batches = 16;
  cfg.warmup = 100;
  cfg.seed = 9;
  auto r = lyapunovSpectrum(pi, cfg);
  ASSERT_EQ(r.exponents.size(), 3u);
  EXPECT_GT(r.exponents[0], 0.1);
  EXPECT_GT(r.exponents[0] - r.exponents[1], 3 * (r.stderrs[0] + r.stderrs[1]));
  EXPECT_LE(std::fabs(r.exponents[0] + r.exponents[2]), 3 * std::hypot(r.stderrs[0], r.stderrs[2]) + 1e-3);
  EXPECT_EQ(r.nearZeroCount, pi.size() - static_cast<std::size_t>(hDimension(pi)));
  EXPECT_EQ(r.sampleCount, 16u);
  EXPECT_NEAR(r.ratios[2], -1, 0.05);

  auto again = lyapunovSpectrum(pi, cfg);
  EXPECT_EQ(again.batchExponents, r.batchExponents);
  cfg.seed = 10;
  EXPECT_NE(lyapunovSpectrum(pi, cfg).batchExponents, r.batchExponents);
}

TEST(Lyapunov, Errors) {
  LyapunovConfig cfg;
  cfg.steps = 0;
  EXPECT_THROW(lyapunovSpectrum(GeneralizedPermutation::parse(kPillowcase), cfg), InsufficientSteps);
  cfg.steps = 10;
  EXPECT_THROW(lyapunovSpectrum(GeneralizedPermutation::parse("A B C\nC B A"), cfg), HypothesisError);
}

TEST(Isometric, ProbeStaysOutsideTheExpandingPart) {
  for (const char* text : {kPillowcase, kGenusOne}) {
    auto pi = GeneralizedPermutation::parse(text);
    auto found = isometricPartProbe(pi, 20, 1, 40);
    EXPECT_LE(integerRank(found), pi.size() - static_cast<std::size_t>(hDimension(pi))) << text;
    for (const auto& v : found) EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](long x) { return x != 0; }));
  }
}
