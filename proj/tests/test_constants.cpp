#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lorentz/constants.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

std::vector<double> power_weights(double theta, std::size_t N) {
  std::vector<double> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = std::pow(static_cast<double>(n + 1), -theta);
  return w;
}

}  // namespace

TEST(Constants, ExactLpEquivalenceValues) {
  const auto w = WeightSequence::power_law(0.5);
  EXPECT_EQ(equiv_to_lp_exact(w, 1.0, 1), 1.0);
  EXPECT_EQ(equiv_to_lp_exact(w, 3.0, 1), 1.0);
  EXPECT_NEAR(equiv_to_lp_exact(w, 1.0, 2), 1.17157287525380990, 1e-15);
  EXPECT_NEAR(equiv_to_lp_exact(w, 2.0, 4), 1.19855987372786920, 1e-15);
  EXPECT_THROW(equiv_to_lp_exact(w, 1.0, 0), lorentz::invalid_argument);
}

TEST(Constants, ExactMatchesBruteForceCone) {
  for (double theta : {0.2, 0.5, 0.8})
    for (double p : {1.0, 2.0})
      for (std::size_t N = 1; N <= 6; ++N) {
        const double brute = oracle::cone_grid_max(power_weights(theta, N), p, 9);
        const double exact = equiv_to_lp_exact(WeightSequence::power_law(theta), p, N);
        EXPECT_NEAR(brute, exact, 1e-12 * exact) << theta << " " << p << " " << N;
      }
}

TEST(Constants, ExactIncreasesInN) {
  for (double theta : {0.1, 0.9})
    for (double p : {1.0, 2.0}) {
      const auto w = WeightSequence::power_law(theta);
      double prev = 0.0;
      for (index_t N = 1; N <= 100'000; N += 1 + N / 10) {
        const double r = equiv_to_lp_exact(w, p, N);
        ASSERT_GT(r, prev);
        prev = r;
      }
    }
}

TEST(Constants, DominationSearchFindsClosedForm) {
  const auto w = WeightSequence::power_law(0.5);
  for (double p : {1.0, 2.0})
    for (index_t N : {1, 2, 4, 6, 8}) {
      const auto lp = lp_descriptor(p, N);
      const auto d = lorentz_descriptor(w, p, N);
      const auto est = domination_constant(lp, d, N);
      const double exact = equiv_to_lp_exact(w, p, N);
      EXPECT_NEAR(est.lower, exact, 1e-6 * exact);
      EXPECT_LE(est.lower, exact * (1 + 1e-12));
      EXPECT_NEAR(domination_constant(d, lp, N).estimate, 1.0, 1e-12);
    }
}

TEST(Constants, SameNormGivesOne) {
  const auto d = lorentz_descriptor(WeightSequence::power_law(0.5), 1.0, 5);
  const auto est = domination_constant(d, d, 5);
  EXPECT_EQ(est.estimate, 1.0);
  EXPECT_EQ(est.lower, 1.0);
}

TEST(Constants, MutualConstantsMultiplyToAtLeastOne) {
  const auto w = WeightSequence::power_law(0.3);
  for (index_t k : {2, 5})
    for (index_t N : {3, 7}) {
      const auto dk = averaged_descriptor(w, k, 1.0, N);
      const auto d = lorentz_descriptor(w, 1.0, N);
      const double f = domination_constant(dk, d, N).estimate;
      const double r = domination_constant(d, dk, N).estimate;
      EXPECT_GE(f * r, 1.0 - 1e-12);
    }
}

TEST(Constants, AveragedNormWithinWeightBand) {
  const double theta = 0.5;
  const auto w = WeightSequence::power_law(theta);
  const auto dk = averaged_descriptor(w, 2, 1.0, 4);
  const auto d = lorentz_descriptor(w, 1.0, 4);
  const double upper = (2.0 - std::pow(2.0, theta)) / (std::pow(2.0, 1.0 - theta) - 1.0);
  EXPECT_LE(domination_constant(dk, d, 4).estimate, upper);
  EXPECT_LE(1.0 / domination_constant(d, dk, 4).estimate, 1.0);
  EXPECT_GE(1.0 / domination_constant(d, dk, 4).estimate, (1.0 - theta) / 2.0);
}

TEST(Constants, SearchIsDeterministic) {
  const auto w = WeightSequence::power_law(0.6);
  SearchConfig cfg;
  cfg.seed = 9;
  const auto a = domination_constant(averaged_descriptor(w, 3, 1.5, 12), lorentz_descriptor(w, 1.5, 12), 12, cfg);
  const auto b = domination_constant(averaged_descriptor(w, 3, 1.5, 12), lorentz_descriptor(w, 1.5, 12), 12, cfg);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Constants, DimensionCutoff) {
  SearchConfig cfg;
  cfg.max_dim = 10;
  const auto lp = lp_descriptor(1.0, 11);
  EXPECT_THROW(domination_constant(lp, lp, 11, cfg), lorentz::cutoff_error);
  EXPECT_THROW(domination_constant(lp, lp, 0, cfg), lorentz::invalid_argument);
}

TEST(Constants, SelectionValues) {
  const std::vector<std::pair<double, std::vector<index_t>>> frozen{
      {0.25, {2, 33, 148, 429, 984, 1946, 3474, 5754}},
      {0.5, {2, 8, 17, 29, 44, 61, 80, 102}},
      {0.75, {2, 5, 9, 12, 16, 20, 25, 29}}};
  for (const auto& [theta, counts] : frozen) {
    const auto w = WeightSequence::power_law(theta);
    const auto sel = select_block_counts(w, 1.0, 8);
    EXPECT_EQ(sel.counts(), counts) << theta;
    for (const auto& e : sel.entries) {
      EXPECT_FALSE(e.raised);
      EXPECT_GT(k_equivalence_ratio(w, 1.0, e.k, e.count), static_cast<double>(e.k));
      if (e.count > 1) {
        EXPECT_LE(k_equivalence_ratio(w, 1.0, e.k, e.count - 1), static_cast<double>(e.k));
      }
    }
  }
}

TEST(Constants, SelectionFirstLevelIsTwo) {
  // N/W_N^(1) = N/W_N exceeds 1 from N = 2 on.
  for (double theta : {0.05, 0.5, 0.95})
    EXPECT_EQ(select_block_counts(WeightSequence::power_law(theta), 1.0, 1).counts()[0], 2u);
}

TEST(Constants, SelectionOnPlateauPrefix) {
  // A flat prefix makes d(w,1) coincide with l_1 on the first coordinates, so
  // the k = 1 threshold moves out to the end of the plateau.
  std::vector<double> prefix(6, 1.0);
  const auto w = WeightSequence::with_prefix(prefix, 0.99);
  const auto sel = select_block_counts(w, 1.0, 3);
  EXPECT_EQ(sel.entries[0].minimal_count, 7u);
  const auto counts = sel.counts();
  for (std::size_t n = 1; n < counts.size(); ++n) EXPECT_GE(counts[n], counts[n - 1]);
  for (const auto& e : sel.entries) {
    EXPECT_GE(e.count, e.minimal_count);
    EXPECT_GT(e.ratio, static_cast<double>(e.k));
  }
}

TEST(Constants, SelectionGrowthCutoff) {
  SearchConfig cfg;
  cfg.growth_cutoff = 100;
  EXPECT_THROW(select_block_counts(WeightSequence::power_law(0.05), 1.0, 8, cfg), lorentz::cutoff_error);
}

TEST(Constants, SelectionProxyForLargerP) {
  const auto w = WeightSequence::power_law(0.5);
  const auto sel = select_block_counts(w, 2.0, 3);
  for (const auto& e : sel.entries) EXPECT_GT(k_equivalence_ratio(w, 2.0, e.k, e.count), static_cast<double>(e.k));
}
