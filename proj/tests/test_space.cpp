#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lorentz/space.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

FiniteVector random_vector(std::mt19937_64& rng, int max_support, index_t range) {
  std::uniform_int_distribution<int> size(1, max_support);
  std::uniform_int_distribution<index_t> idx(1, range);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  FiniteVector v;
  const int m = size(rng);
  for (int n = 0; n < m; ++n) v.set(idx(rng), val(rng));
  return v;
}

}  // namespace

TEST(FiniteVector, CanonicalForm) {
  auto v = FiniteVector::from_entries({{5, 3.0}, {2, 0.0}, {9, 2.0}});
  EXPECT_EQ(v.support_size(), 2u);
  v.set(5, 0.0);
  EXPECT_EQ(v.support_size(), 1u);
  EXPECT_EQ(v[9], 2.0);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_THROW(FiniteVector::from_entries({{1, 1.0}, {1, 2.0}}), lorentz::invalid_argument);
  EXPECT_THROW(FiniteVector::from_entries({{0, 1.0}}), lorentz::invalid_argument);
  EXPECT_TRUE((FiniteVector::unit(1) + (-1.0) * FiniteVector::unit(1)).empty());
}

TEST(Space, DecreasingRearrangement) {
  const auto v = FiniteVector::from_entries({{5, 3.0}, {2, -1.0}, {9, 2.0}});
  EXPECT_EQ(decreasing_rearrangement(v), (std::vector<double>{3, 2, 1}));
  EXPECT_TRUE(decreasing_rearrangement(FiniteVector{}).empty());
  EXPECT_EQ(decreasing_rearrangement(FiniteVector::from_entries({{1, 1.0}, {7, 1.0}})),
            (std::vector<double>{1, 1}));
}

TEST(Space, LorentzNormExamples) {
  const auto w = WeightSequence::power_law(0.5);
  for (double p : {1.0, 1.5, 2.0, 4.0})
    EXPECT_EQ(lorentz_norm(FiniteVector::unit(1), SpaceParams(p, w)), 1.0);
  const std::vector<double> vals{3, 1, 2};
  EXPECT_NEAR(lorentz_norm(FiniteVector::from_dense(vals), SpaceParams(1.0, w)), 4.99156383156272081, 1e-14);
  for (double p : {1.0, 2.0, 3.0})
    for (index_t N : {1, 4, 33}) {
      const std::vector<double> ones(N, 1.0);
      EXPECT_NEAR(lorentz_norm(FiniteVector::from_dense(ones), SpaceParams(p, w)),
                  std::pow(partial_sum(w, N), 1.0 / p), 1e-14);
    }
}

TEST(Space, MatchesSupOverPermutations) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  for (double theta : {0.2, 0.8})
    for (double p : {1.0, 2.5}) {
      const auto w = WeightSequence::power_law(theta);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(6);
        for (auto& x : a) x = val(rng);
        const double ref = oracle::sup_over_permutations(a, [&](int n) { return std::pow(n, -theta); }, p);
        EXPECT_NEAR(lorentz_norm(FiniteVector::from_dense(a), SpaceParams(p, w)), ref, 1e-12 * ref);
      }
    }
}

TEST(Space, LpNorm) {
  EXPECT_EQ(lp_norm(FiniteVector::unit(3), 2.0), 1.0);
  EXPECT_NEAR(lp_norm(FiniteVector::from_dense(std::vector<double>{3, 4}), 2.0), 5.0, 1e-15);
  EXPECT_EQ(lp_norm(FiniteVector::from_dense(std::vector<double>{1, 1, 1, 1}), 1.0), 4.0);
  EXPECT_THROW(lp_norm(FiniteVector{}, 0.5), lorentz::invalid_argument);
}

TEST(Space, YNorm) {
  const auto w = WeightSequence::power_law(0.5);
  YVector single;
  single.add_component(1, {1.0});
  EXPECT_EQ(y_norm(single, SpaceParams(3.0, w)), 1.0);
  YVector two;
  two.add_component(1, {1.0});
  two.add_component(1, {1.0});
  EXPECT_EQ(y_norm(two, SpaceParams(1.0, w)), 2.0);
  YVector mixed;
  mixed.add_component(2, {1.0, 1.0});
  mixed.add_component(1, {1.0});
  EXPECT_NEAR(y_norm(mixed, SpaceParams(2.0, w)), 1.64532877601607258, 1e-14);
  YVector bad;
  EXPECT_THROW(bad.add_component(1, {1.0, 2.0}), lorentz::invalid_argument);
  YVector short_component;
  short_component.add_component(5, {2.0});
  EXPECT_EQ(y_norm(short_component, SpaceParams(1.0, w)), 2.0);
}

TEST(Space, SpaceParamsRejectsSmallP) {
  EXPECT_THROW(SpaceParams(0.99, WeightSequence::power_law(0.5)), lorentz::invalid_argument);
}

TEST(SpaceProperties, PermutationAndSignInvariance) {
  std::mt19937_64 rng(11);
  const SpaceParams params(1.7, WeightSequence::power_law(0.35));
  for (int trial = 0; trial < 2000; ++trial) {
    const auto v = random_vector(rng, 30, 100);
    std::vector<FiniteVector::entry> moved;
    std::vector<index_t> targets(100);
    for (index_t n = 0; n < 100; ++n) targets[n] = n + 1;
    std::shuffle(targets.begin(), targets.end(), rng);
    std::size_t t = 0;
    std::bernoulli_distribution flip(0.5);
    for (const auto& [n, a] : v.entries()) moved.emplace_back(targets[t++], flip(rng) ? -a : a);
    const double base = lorentz_norm(v, params);
    EXPECT_NEAR(lorentz_norm(FiniteVector::from_entries(moved), params), base, 1e-12 * base);
  }
}

TEST(SpaceProperties, ZeroingNeverIncreases) {
  std::mt19937_64 rng(12);
  const SpaceParams params(2.0, WeightSequence::power_law(0.6));
  for (int trial = 0; trial < 2000; ++trial) {
    auto v = random_vector(rng, 20, 50);
    const double before = lorentz_norm(v, params);
    v.set(v.entries()[trial % v.support_size()].first, 0.0);
    EXPECT_LE(lorentz_norm(v, params), before * (1 + 1e-15));
  }
}

TEST(SpaceProperties, NormAxioms) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (double p : {1.0, 1.5, 3.0}) {
    const SpaceParams params(p, WeightSequence::power_law(0.45));
    for (int trial = 0; trial < 2000; ++trial) {
      const auto x = random_vector(rng, 25, 60);
      const auto y = random_vector(rng, 25, 60);
      const double nx = lorentz_norm(x, params), ny = lorentz_norm(y, params);
      EXPECT_LE(lorentz_norm(x + y, params), (nx + ny) * (1 + 1e-12));
      const double a = scale(rng);
      EXPECT_NEAR(lorentz_norm(a * x, params), std::abs(a) * nx, 1e-13 * std::abs(a) * nx);
    }
  }
}

TEST(SpaceProperties, LpDominance) {
  std::mt19937_64 rng(14);
  for (double p : {1.0, 2.0}) {
    const auto w = WeightSequence::power_law(0.5);
    const SpaceParams params(p, w);
    for (int trial = 0; trial < 2000; ++trial) {
      const auto v = random_vector(rng, 40, 40);
      const double d = lorentz_norm(v, params), l = lp_norm(v, p);
      const double N = static_cast<double>(v.support_size());
      EXPECT_LE(d, l * (1 + 1e-13));
      EXPECT_LE(l, std::pow(N / partial_sum(w, v.support_size()), 1.0 / p) * d * (1 + 1e-12));
    }
  }
}

TEST(SpaceProperties, DisjointPSubadditivity) {
  std::mt19937_64 rng(15);
  const SpaceParams params(1.5, WeightSequence::power_law(0.3));
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    FiniteVector x, y;
    for (index_t n = 1; n <= 30; ++n) {
      if (coin(rng)) continue;
      (coin(rng) ? x : y).set(n, val(rng));
    }
    const double lhs = lorentz_norm_pow(x + y, params);
    const double rhs = lorentz_norm_pow(x, params) + lorentz_norm_pow(y, params);
    EXPECT_GE(rhs - lhs, -1e-12);
  }
}
