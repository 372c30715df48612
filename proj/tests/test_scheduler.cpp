#include <gtest/gtest.h>

#include "synergy/bounds.hpp"
#include "synergy/errors.hpp"
#include "synergy/scheduler.hpp"

namespace synergy {
namespace {

std::vector<int> distinct(int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) d[static_cast<std::size_t>(i)] = i + 1;
  return d;
}

// Smallest c found by trying c = 1, 2, ... against the recurrence directly.
BigInt brute_force_granularity(int k, int g) {
  for (BigInt c = 1;; ++c) {
    BigInt n = c;
    bool integral = true;
    for (int j = g + 2; j <= k && integral; ++j) {
      const BigInt carried = BigInt(j - 1) * n;
      integral = carried % (k - j + 1) == 0;
      n = carried / (k - j + 1);
    }
    if (integral) return c;
  }
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TEST(MinimalGranularity, HandValues) {
  EXPECT_EQ(minimal_granularity(2, 1), 1);
  EXPECT_EQ(minimal_granularity(3, 1), 1);
  EXPECT_EQ(factorial(3) % minimal_granularity(5, 1), 0);
  EXPECT_EQ(minimal_granularity(5, 1), brute_force_granularity(5, 1));
}

TEST(MinimalGranularity, AgreesWithSearchAndDividesFactorial) {
  for (int k = 1; k <= 10; ++k) {
    for (int g = 0; g < k; ++g) {
      const BigInt c = minimal_granularity(k, g);
      ASSERT_EQ(c, brute_force_granularity(k, g)) << k << "," << g;
      ASSERT_EQ(factorial(k - g - 1) % c, 0);
    }
  }
  for (int k = 11; k <= 64; ++k) {
    for (int g = 0; g < k; ++g) ASSERT_EQ(factorial(k - g - 1) % minimal_granularity(k, g), 0);
  }
}

TEST(BuildXors, TwoUsers) {
  const auto c = SystemConfig::from_gamma(2, 2, 1);
  const SubfileTable t = subpacketize(c, generate_library(c, 3));
  const std::vector<int> demand{1, 2};
  const auto xors = build_xors(c, t, demand);
  ASSERT_EQ(xors.size(), 1u);
  EXPECT_EQ(xors[0].psi, Subset(2, {1, 2}));
  const auto w1 = t.at(1, Subset(2, {2}));
  const auto w2 = t.at(2, Subset(2, {1}));
  for (std::size_t i = 0; i < xors[0].payload.size(); ++i) EXPECT_EQ(xors[0].payload[i], w1[i] + w2[i]);
}

TEST(BuildXors, CountsAndDegenerateCase) {
  const auto c3 = SystemConfig::from_gamma(3, 3, 1);
  EXPECT_EQ(build_xors(c3, subpacketize(c3, generate_library(c3, 1)), distinct(3)).size(), 3u);

  const auto c0 = SystemConfig::from_gamma(3, 3, 0);
  const Library lib = generate_library(c0, 1);
  const std::vector<int> demand{3, 1, 2};
  const auto xors = build_xors(c0, subpacketize(c0, lib), demand);
  ASSERT_EQ(xors.size(), 3u);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(xors[k - 1].psi, Subset(3, {k}));
    EXPECT_EQ(xors[k - 1].payload, lib.files[demand[k - 1] - 1]);
  }
  for (int k = 1; k <= 7; ++k) {
    for (int g = 0; g <= k; ++g) {
      const auto c = SystemConfig::from_gamma(k, k, g);
      if (c.file_symbols() > 5000) continue;
      const auto x = build_xors(c, subpacketize(c, generate_library(c, 1)), distinct(k));
      ASSERT_EQ(BigInt(static_cast<unsigned long>(x.size())), binomial(k, g + 1));
    }
  }
}

TEST(BuildXors, RejectsBadDemand) {
  const auto c = SystemConfig::from_gamma(3, 3, 1);
  const SubfileTable t = subpacketize(c, generate_library(c, 1));
  EXPECT_THROW(build_xors(c, t, std::vector<int>{1, 2}), InvalidConfig);
  EXPECT_THROW(build_xors(c, t, std::vector<int>{1, 2, 4}), InvalidConfig);
}

TEST(PlanPhases, ThreeUsersOneReplica) {
  const auto plan = plan_phases(SystemConfig::from_gamma(3, 3, 1), distinct(3));
  ASSERT_EQ(plan.phases.size(), 2u);
  EXPECT_EQ(plan.phases[0].duration, Rational(1, 2));
  EXPECT_EQ(plan.phases[1].duration, Rational(1, 3));
  EXPECT_EQ(plan.total_duration(), Rational(5, 6));
  EXPECT_EQ(plan.total_uses(), 5);
  EXPECT_EQ(plan.phases[0].active_antennas, 2);
  EXPECT_EQ(plan.phases[1].active_antennas, 1);
  EXPECT_EQ(plan.phases[1].uses_per_group, 2);
  EXPECT_EQ(plan.phases[0].combining.rows(), 0u);
  EXPECT_EQ(plan.phases[1].combining, cauchy_combining_matrix(3));
}

TEST(PlanPhases, LastPhaseOnlyAndFullCache) {
  const auto plan = plan_phases(SystemConfig::from_gamma(4, 4, 3), distinct(4));
  ASSERT_EQ(plan.phases.size(), 1u);
  EXPECT_EQ(plan.phases[0].phase, 4);
  EXPECT_EQ(plan.total_duration(), Rational(1, 4));
  for (int k = 2; k <= 12; ++k) {
    EXPECT_EQ(plan_phases(SystemConfig::from_gamma(k, k, k - 1), distinct(k)).total_duration(), Rational(1, k));
  }
  const auto empty = plan_phases(SystemConfig::from_gamma(4, 4, 4), distinct(4));
  EXPECT_TRUE(empty.phases.empty());
  EXPECT_EQ(empty.total_duration(), Rational(0));
  EXPECT_EQ(empty.total_uses(), 0);
}

TEST(PlanPhases, GranularityError) {
  auto c = SystemConfig::from_gamma(5, 5, 1);
  ASSERT_EQ(c.granularity, 3);
  c.granularity = 2;
  EXPECT_THROW(plan_phases(c, distinct(5)), GranularityError);
  c.granularity = 6;
  EXPECT_NO_THROW(plan_phases(c, distinct(5)));
}

TEST(PlanPhases, TelescopingRatioAndAccountingUpTo64) {
  for (int k = 1; k <= 64; ++k) {
    for (int g = 0; g < k; ++g) {
      const auto c = SystemConfig::from_gamma(k, k, g);
      const auto plan = plan_phases(c, distinct(k));
      ASSERT_EQ(plan.total_duration(), harmonic(k) - harmonic(g)) << k << "," << g;
      const auto& first = plan.phases.front();
      ASSERT_EQ(first.duration, Rational(BigInt(1), BigInt(g + 1)));
      for (const auto& p : plan.phases) {
        ASSERT_EQ(p.duration * Rational(p.phase), first.duration * Rational(g + 1));
        ASSERT_EQ(p.duration, Rational(BigInt(1), BigInt(p.phase)));
      }
      ASSERT_EQ(Rational(plan.total_uses(), c.file_symbols()), achievable_T(k, g));
    }
  }
}

TEST(PlanPhases, MultipleOfMinimalGranularity) {
  auto c = SystemConfig::from_gamma(6, 6, 0);
  c.granularity *= 3;
  const auto plan = plan_phases(c, distinct(6));
  EXPECT_EQ(plan.total_duration(), harmonic(6));
  EXPECT_EQ(Rational(plan.total_uses(), c.file_symbols()), harmonic(6));
}

}  // namespace
}  // namespace synergy
