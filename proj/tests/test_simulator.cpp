#include <gtest/gtest.h>

#include <filesystem>

#include "synergy/errors.hpp"
#include "synergy/simulator.hpp"

namespace synergy {
namespace {

std::vector<int> distinct(int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) d[static_cast<std::size_t>(i)] = i + 1;
  return d;
}

TEST(RunDelivery, TwoUsersSinglePhase) {
  const auto c = SystemConfig::from_gamma(2, 2, 1);
  const Transcript tr = replay(c, {1, 2}, 7);
  ASSERT_EQ(tr.plan.phases.size(), 1u);
  EXPECT_EQ(tr.plan.total_duration(), Rational(1, 2));
  ASSERT_EQ(tr.uses.size(), 1u);
  EXPECT_EQ(tr.uses[0].phase, 2);
  EXPECT_EQ(tr.uses[0].transmitted[1], Fp(0));  // one active antenna
}

TEST(RunDelivery, ThreeUsersOneReplicaUseCount) {
  const auto c = SystemConfig::from_gamma(3, 3, 1);
  const Transcript tr = replay(c, distinct(3), 7);
  ASSERT_EQ(tr.uses.size(), 5u);
  for (int t = 0; t < 3; ++t) EXPECT_EQ(tr.uses[t].phase, 2);
  EXPECT_EQ(tr.uses[3].phase, 3);
  EXPECT_EQ(tr.uses[4].phase, 3);
  EXPECT_EQ(tr.uses[4].slot, 1u);
  EXPECT_EQ(Rational(BigInt(5), c.file_symbols()), Rational(5, 6));
}

TEST(RunDelivery, FullCacheSendsNothing) {
  const Transcript tr = replay(SystemConfig::from_gamma(4, 4, 4), distinct(4), 1);
  EXPECT_TRUE(tr.uses.empty());
  EXPECT_EQ(tr.observations.size(), 0u);
}

TEST(RunDelivery, RejectsMismatchedLibrary) {
  const auto c = SystemConfig::from_gamma(3, 3, 1);
  Library lib = generate_library(c, 1);
  lib.files[0].push_back(Fp(1));
  EXPECT_THROW(run_delivery(plan_phases(c, distinct(3)), lib, 1), LengthMismatch);
}

TEST(Replay, DeterministicAndSeedSensitive) {
  const auto c = SystemConfig::from_gamma(4, 4, 1);
  const Transcript a = replay(c, distinct(4), 11);
  const Transcript b = replay(c, distinct(4), 11);
  const Transcript other = replay(c, distinct(4), 12);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.uses.size(), other.uses.size());
  std::size_t differing = 0;
  for (std::size_t t = 0; t < a.uses.size(); ++t) differing += a.uses[t].channel != other.uses[t].channel;
  EXPECT_EQ(differing, a.uses.size());
}

class TranscriptInvariants : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(TranscriptInvariants, Hold) {
  const auto [k, g] = GetParam();
  const auto c = SystemConfig::from_gamma(k, k, g);
  const Transcript tr = replay(c, distinct(k), 1000 + static_cast<std::uint64_t>(10 * k + g));

  // Use count and channel-use / duration accounting.
  ASSERT_EQ(BigInt(static_cast<unsigned long>(tr.uses.size())), tr.plan.total_uses());
  ASSERT_EQ(Rational(tr.plan.total_uses()), tr.plan.total_duration() * Rational(c.file_symbols()));

  for (const ChannelUse& use : tr.uses) {
    // Noiseless consistency.
    const FieldVector recomputed = use.channel * use.transmitted;
    for (int user = 1; user <= k; ++user) ASSERT_EQ(tr.observations.at(user, use.t), recomputed[user - 1]);
    // Fresh nonzero coefficients.
    for (Fp h : use.channel.entries()) ASSERT_FALSE(h.is_zero());
    // Only the phase's antennas carry signal.
    const int active = k - use.phase + 1;
    for (int a = active; a < k; ++a) ASSERT_TRUE(use.transmitted[static_cast<std::size_t>(a)].is_zero());
    // Delayed CSIT only: inputs are strictly older uses.
    if (use.phase > g + 1) {
      ASSERT_TRUE(use.latest_input.has_value());
      ASSERT_LT(*use.latest_input, use.t);
    } else {
      ASSERT_FALSE(use.latest_input.has_value());
    }
  }

  // Order-j multicast: every later-phase transmission is the combining matrix
  // applied to observations already logged at the group's members.
  for (std::size_t p = 1; p < tr.plan.phases.size(); ++p) {
    const auto& phase = tr.plan.phases[p];
    const auto prev_uses = tr.plan.phases[p - 1].uses_per_group.get_ui();
    const auto uses = phase.uses_per_group.get_ui();
    for (const Subset& psi : phase.groups()) {
      FieldVector flat;
      for (std::size_t i = 0; i < phase.combining.rows(); ++i) {
        for (std::size_t u = 0; u < prev_uses; ++u) {
          Fp acc;
          for (int m = 0; m < psi.size(); ++m) {
            const int member = psi[m];
            const auto t = tr.first_use(phase.phase - 1, psi.without(member)) + u;
            acc += phase.combining(i, static_cast<std::size_t>(m)) * tr.observations.at(member, t);
          }
          flat.push_back(acc);
        }
      }
      const auto start = tr.first_use(phase.phase, psi);
      for (std::size_t u = 0; u < uses; ++u) {
        ASSERT_EQ(tr.uses[start + u].group, psi);
        for (int a = 0; a < phase.active_antennas; ++a) {
          ASSERT_EQ(tr.uses[start + u].transmitted[static_cast<std::size_t>(a)], flat[a * uses + u]);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallSystems, TranscriptInvariants,
                         ::testing::Values(std::tuple{2, 0}, std::tuple{3, 0}, std::tuple{3, 1}, std::tuple{4, 0},
                                           std::tuple{4, 1}, std::tuple{4, 2}, std::tuple{5, 1}, std::tuple{5, 2},
                                           std::tuple{6, 0}, std::tuple{6, 3}));

TEST(DelayedCsitLedger, RefusesUnpublishedUses) {
  DelayedCsitLedger ledger(2);
  EXPECT_THROW((void)ledger.observation(1, 0), CausalityViolation);
  ledger.publish(FieldMatrix::identity(2), FieldVector{Fp(3), Fp(4)});
  EXPECT_EQ(ledger.observation(2, 0), Fp(4));
  EXPECT_EQ(ledger.channel(0), FieldMatrix::identity(2));
  EXPECT_THROW((void)ledger.channel(1), CausalityViolation);
}

TEST(DegenerateChannel, DetectedAndResampled) {
  const auto c = SystemConfig::from_gamma(3, 3, 0);
  const auto plan = plan_phases(c, distinct(3));
  const Library lib = generate_library(c, 2);
  DeliveryOptions all_ones;
  all_ones.channel_alphabet = 1;  // every channel matrix is rank one
  EXPECT_THROW(run_delivery(plan, lib, 2, all_ones), DegenerateChannel);
  all_ones.resample_degenerate = true;
  EXPECT_THROW(run_delivery(plan, lib, 2, all_ones), DegenerateChannel);

  DeliveryOptions binary;
  binary.channel_alphabet = 2;
  binary.resample_degenerate = true;
  binary.max_resamples = 10000;
  const Transcript tr = run_delivery(plan, lib, 2, binary);
  EXPECT_GT(tr.resampled_uses, 0u);
  EXPECT_EQ(BigInt(static_cast<unsigned long>(tr.uses.size())), plan.total_uses());
}

TEST(TranscriptFile, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "synergy_transcript_test";
  std::filesystem::create_directories(dir);
  const Transcript tr = replay(SystemConfig::from_gamma(4, 5, 1), {5, 1, 1, 2}, 99);
  save_transcript(tr, dir / "run.json");
  EXPECT_TRUE(std::filesystem::exists(dir / "run.bin"));
  const Transcript back = load_transcript(dir / "run.json");
  EXPECT_EQ(back, tr);
  EXPECT_EQ(back.plan.total_duration(), tr.plan.total_duration());

  std::filesystem::resize_file(dir / "run.bin", std::filesystem::file_size(dir / "run.bin") - 1);
  EXPECT_THROW(load_transcript(dir / "run.json"), FormatError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace synergy
