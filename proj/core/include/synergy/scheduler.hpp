#pragma once

#include <span>
#include <vector>

#include "synergy/combinatorics.hpp"
#include "synergy/field.hpp"
#include "synergy/placement.hpp"
#include "synergy/rational.hpp"

namespace synergy {

/// Folded message X_psi = sum over k in psi of W_{R_k, psi \ {k}}, |psi| = Gamma + 1.
/// Field addition plays the role of XOR; subtraction undoes it.
struct XorMessage {
  Subset psi;
  FieldVector payload;
};

/// Throws InvalidConfig unless demand has K entries in [1..N].
void validate_demand(const SystemConfig& config, std::span<const int> demand);

/// One X_psi per (Gamma+1)-subset psi, in lexicographic order of psi.
std::vector<XorMessage> build_xors(const SystemConfig& config, const SubfileTable& subfiles,
                                   std::span<const int> demand);

/// Smallest c >= 1 for which n_{Gamma+1} = c and
/// n_j = (j - 1) n_{j-1} / (K - j + 1) is integral for every j in [Gamma+2..K].
BigInt minimal_granularity(int users, int gamma);

/// Transmission schedule of phase j: every j-subset psi gets `uses_per_group`
/// consecutive channel uses on the first K - j + 1 antennas.
struct PhasePlan {
  int users = 0;
  int phase = 0;             ///< j, in [Gamma+1..K]
  BigInt group_count;        ///< C(K, j)
  BigInt uses_per_group;     ///< n_j
  int active_antennas = 0;   ///< K - j + 1
  FieldMatrix combining;     ///< (j-1) x j Cauchy matrix; empty in phase Gamma+1
  Rational duration;         ///< C(K, j) n_j / (C(K, Gamma)(K - Gamma) c), in time slots

  [[nodiscard]] BigInt total_uses() const { return group_count * uses_per_group; }
  /// Groups of this phase in canonical order. Only sensible for small K.
  [[nodiscard]] std::vector<Subset> groups() const { return enumerate_subsets(users, phase); }
};

struct DeliveryPlan {
  SystemConfig config;
  std::vector<int> demand;
  std::vector<PhasePlan> phases;  ///< j = Gamma+1 .. K; empty when Gamma = K

  [[nodiscard]] Rational total_duration() const;
  [[nodiscard]] BigInt total_uses() const;
  /// The plan for phase j. Throws std::out_of_range.
  [[nodiscard]] const PhasePlan& phase(int j) const;
};

/// Builds phases Gamma+1..K with their exact channel-use counts and durations.
/// Throws GranularityError if config.granularity leaves some n_j fractional.
DeliveryPlan plan_phases(const SystemConfig& config, std::vector<int> demand);

}  // namespace synergy
