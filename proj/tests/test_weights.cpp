#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "lorentz/weights.hpp"
#include "oracles.hpp"

using namespace lorentz;

TEST(Weights, PowerLawValues) {
  const auto w = WeightSequence::power_law(0.5);
  EXPECT_EQ(w(1), 1.0);
  EXPECT_EQ(weight(w, 4), 0.5);
  EXPECT_EQ(weight(WeightSequence::power_law(0.25), 16), 0.5);
  EXPECT_THROW(weight(w, 0), lorentz::invalid_argument);
}

TEST(Weights, ThetaRangeEnforced) {
  EXPECT_THROW(WeightSequence::power_law(0.0), lorentz::invalid_argument);
  EXPECT_THROW(WeightSequence::power_law(1.0), lorentz::invalid_argument);
  EXPECT_THROW(WeightSequence::power_law(0.005), lorentz::invalid_argument);
  EXPECT_NO_THROW(WeightSequence::power_law(0.01));
  EXPECT_NO_THROW(WeightSequence::power_law(0.99));
}

TEST(Weights, PartialSums) {
  const auto w = WeightSequence::power_law(0.5);
  EXPECT_EQ(partial_sum(w, 1), 1.0);
  EXPECT_NEAR(partial_sum(w, 2), 1.7071067811865475, 1e-15);
  EXPECT_NEAR(partial_sum(w, 4), 2.784457050376173, 1e-15);
  EXPECT_THROW(partial_sum(w, 0), lorentz::invalid_argument);
}

TEST(Weights, PartialSumsMatchLongDoubleOracle) {
  for (double theta : {0.05, 0.3, 0.7, 0.95}) {
    const auto w = WeightSequence::power_law(theta);
    for (index_t k : {1, 7, 100, 5000, 100000}) {
      const double ref = static_cast<double>(oracle::power_sum(theta, 1, k));
      EXPECT_NEAR(partial_sum(w, k), ref, 1e-13 * ref) << theta << " " << k;
    }
  }
}

TEST(Weights, CompensatedModeAgrees) {
  const auto naive = WeightSequence::power_law(0.3);
  const auto comp = WeightSequence::power_law(0.3, Summation::compensated);
  const index_t k = 2'000'000;
  const double ref = static_cast<double>(oracle::power_sum(0.3, 1, k));
  EXPECT_NEAR(comp.cumulative(k), ref, 4e-16 * ref);
  EXPECT_NEAR(naive.cumulative(k), ref, 1e-12 * ref);
}

TEST(Weights, AveragedWeight) {
  const auto w = WeightSequence::power_law(0.5);
  for (index_t k : {1, 2, 17, 400}) EXPECT_EQ(averaged_weight(w, 1, k), 1.0);
  const double expected = 0.631097176264977971885;
  EXPECT_NEAR(averaged_weight(w, 2, 2, 0), expected, 1e-15);
  // Offset J = 2 shifts the first window onto indices 3, 4.
  EXPECT_NEAR(averaged_weight(w, 1, 2, 2), expected, 1e-15);
  const AveragedWeightView view(w, 2);
  EXPECT_EQ(view(2), averaged_weight(w, 2, 2));
}

TEST(Weights, AveragedWeightNonincreasing) {
  for (double theta : {0.1, 0.5, 0.9}) {
    const auto w = WeightSequence::power_law(theta);
    w.reserve(100'000);
    for (index_t k = 1; k <= 100; k += 3) {
      double prev = averaged_weight(w, 1, k);
      for (index_t i = 2; i <= 1000; ++i) {
        const double cur = averaged_weight(w, i, k);
        ASSERT_LE(cur, prev * (1 + 1e-13)) << theta << " " << k << " " << i;
        prev = cur;
      }
    }
  }
}

TEST(Weights, IntegralComparisonBounds) {
  for (double theta : {0.05, 0.5, 0.95}) {
    const auto w = WeightSequence::power_law(theta);
    const double e = 1.0 - theta;
    for (index_t k = 1; k <= 20000; k = k * 3 + 1) {
      const double Wk = partial_sum(w, k);
      const double lo = (std::pow(k + 1.0, e) - 1.0) / e;
      const double hi = 1.0 + (std::pow(static_cast<double>(k), e) - 1.0) / e;
      EXPECT_LE(lo, Wk * (1 + 1e-14));
      EXPECT_LE(Wk, hi * (1 + 1e-14));
      EXPECT_GE(Wk, static_cast<double>(k) * w(k));
      EXPECT_LE(Wk, static_cast<double>(k));
    }
  }
}

TEST(Weights, PrefixKind) {
  const auto w = WeightSequence::with_prefix({1.0, 1.0, 1.0, 0.5}, 0.5);
  EXPECT_EQ(w(3), 1.0);
  EXPECT_EQ(w(5), std::pow(5.0, -0.5));
  EXPECT_EQ(partial_sum(w, 4), 3.5);
  EXPECT_TRUE(w.validate_prefix(1000));
  EXPECT_THROW(WeightSequence::with_prefix({}, 0.5), lorentz::invalid_argument);
  EXPECT_THROW(WeightSequence::with_prefix({0.9}, 0.5), lorentz::invalid_argument);
  EXPECT_THROW(WeightSequence::with_prefix({1.0, 0.5, 0.6}, 0.5), lorentz::invalid_argument);
  // tail 5^-0.5 ≈ 0.447 lies above 0.4
  EXPECT_THROW(WeightSequence::with_prefix({1.0, 0.5, 0.45, 0.4}, 0.5), lorentz::invalid_argument);
}

TEST(Weights, MonotonePositivePrefix) {
  for (double theta : {0.01, 0.5, 0.99}) EXPECT_TRUE(WeightSequence::power_law(theta).validate_prefix(100000));
}

TEST(Weights, WindowSumsAgree) {
  const auto w = WeightSequence::power_law(0.4);
  for (index_t first : {1, 2, 50, 999})
    for (index_t count : {1, 10, 1000}) {
      const double ref = static_cast<double>(oracle::power_sum(0.4, first, first + count - 1));
      EXPECT_NEAR(w.window_sum(first, count), ref, 1e-13 * ref);
      EXPECT_NEAR(w.window_difference(first, count), ref, 1e-12 * ref);
    }
  EXPECT_EQ(w.window_sum(1, 7), partial_sum(w, 7));
}

TEST(Weights, ConcurrentReadersSeeSameValues) {
  const auto w = WeightSequence::power_law(0.37);
  const auto ref = WeightSequence::power_law(0.37);
  ref.reserve(200'000);
  std::vector<std::thread> threads;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (index_t k = 1 + t; k <= 200'000; k += 997)
        if (w.cumulative(k) != ref.cumulative(k)) ++mismatches[t];
    });
  for (auto& th : threads) th.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}
