#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "synergy/combinatorics.hpp"
#include "synergy/field.hpp"
#include "synergy/placement.hpp"
#include "synergy/scheduler.hpp"

namespace synergy {

/// One noiseless use of the K-antenna broadcast channel.
struct ChannelUse {
  std::uint64_t t = 0;      ///< global use index
  int phase = 0;            ///< j
  Subset group;             ///< psi, |psi| = j
  std::uint64_t slot = 0;   ///< position within the group's n_j uses
  FieldMatrix channel;      ///< K x K; row k-1 is h_k
  FieldVector transmitted;  ///< x; zero beyond the phase's active antennas
  /// Latest use whose fed-back observation went into x (phases j >= Gamma+2).
  std::optional<std::uint64_t> latest_input;

  friend bool operator==(const ChannelUse&, const ChannelUse&) = default;
};

/// Per-user received scalars, one per channel use: L = h_k^T x.
class ObservationLog {
 public:
  ObservationLog() = default;
  explicit ObservationLog(int users) : per_user_(static_cast<std::size_t>(users)) {}

  void append(std::span<const Fp> observations);
  [[nodiscard]] int users() const { return static_cast<int>(per_user_.size()); }
  [[nodiscard]] std::uint64_t size() const { return per_user_.empty() ? 0 : per_user_.front().size(); }
  /// Observation of user k (1-based) at use t. Throws MissingObservation.
  [[nodiscard]] Fp at(int user, std::uint64_t t) const;
  [[nodiscard]] std::span<const Fp> of(int user) const { return per_user_.at(static_cast<std::size_t>(user - 1)); }
  Fp& mutable_at(int user, std::uint64_t t) { return per_user_.at(static_cast<std::size_t>(user - 1)).at(t); }

  friend bool operator==(const ObservationLog&, const ObservationLog&) = default;

 private:
  std::vector<FieldVector> per_user_;
};

/// Transmitter-side record of fed-back channel state and receiver observations.
/// A use becomes visible only after it has completed; reading anything newer
/// throws CausalityViolation.
class DelayedCsitLedger {
 public:
  explicit DelayedCsitLedger(int users) : observations_(users) {}

  void publish(const FieldMatrix& channel, std::span<const Fp> observations);
  [[nodiscard]] std::uint64_t visible_uses() const { return channels_.size(); }
  [[nodiscard]] Fp observation(int user, std::uint64_t t) const;
  [[nodiscard]] const FieldMatrix& channel(std::uint64_t t) const;

 private:
  void require_visible(std::uint64_t t) const;

  std::vector<FieldMatrix> channels_;
  ObservationLog observations_;
};

/// Complete record of a delivery run.
struct Transcript {
  DeliveryPlan plan;
  std::uint64_t seed = 0;
  std::vector<ChannelUse> uses;
  ObservationLog observations;
  std::uint64_t resampled_uses = 0;

  [[nodiscard]] const SystemConfig& config() const { return plan.config; }
  [[nodiscard]] std::span<const int> demand() const { return plan.demand; }
  /// Index of the first use spent on `group` in `phase`.
  [[nodiscard]] std::uint64_t first_use(int phase, const Subset& group) const;

  /// Transcript fields only; equal plans are implied by equal config and demand.
  friend bool operator==(const Transcript& a, const Transcript& b) {
    return a.plan.config == b.plan.config && a.plan.demand == b.plan.demand && a.seed == b.seed &&
           a.uses == b.uses && a.observations == b.observations && a.resampled_uses == b.resampled_uses;
  }
};

struct DeliveryOptions {
  /// Redraw a channel use whose decoding subsystems are singular instead of
  /// throwing DegenerateChannel.
  bool resample_degenerate = false;
  /// Give up on a use after this many redraws.
  int max_resamples = 64;
  /// When nonzero, channel coefficients are drawn from {1..channel_alphabet}
  /// instead of all of GF(p) \ {0}. Small alphabets make singular draws likely.
  std::uint32_t channel_alphabet = 0;
};

/// Transmits every phase of `plan` over fresh uniform nonzero channels drawn
/// from `seed`. Throws DegenerateChannel (unless resampling) or LengthMismatch.
Transcript run_delivery(const DeliveryPlan& plan, const Library& library, std::uint64_t seed,
                        DeliveryOptions options = {});

/// Regenerates library and transcript from (config, demand, seed).
Transcript replay(const SystemConfig& config, std::vector<int> demand, std::uint64_t seed,
                  DeliveryOptions options = {});

/// Writes `json_path` (metadata, plan, durations) and a binary sidecar next to it
/// holding every channel use and observation.
void save_transcript(const Transcript& transcript, const std::filesystem::path& json_path);
/// Reads a transcript written by save_transcript. Throws FormatError.
Transcript load_transcript(const std::filesystem::path& json_path);

}  // namespace synergy
