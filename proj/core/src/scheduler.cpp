#include "synergy/scheduler.hpp"

#include <stdexcept>

#include "synergy/errors.hpp"

namespace synergy {

void validate_demand(const SystemConfig& config, std::span<const int> demand) {
  if (demand.size() != static_cast<std::size_t>(config.users)) {
    throw InvalidConfig("demand has " + std::to_string(demand.size()) + " entries, expected K = " +
                        std::to_string(config.users));
  }
  for (int r : demand) {
    if (r < 1 || r > config.files) {
      throw InvalidConfig("requested file " + std::to_string(r) + " outside [1.." + std::to_string(config.files) + "]");
    }
  }
}

std::vector<XorMessage> build_xors(const SystemConfig& config, const SubfileTable& subfiles,
                                   std::span<const int> demand) {
  validate_demand(config, demand);
  std::vector<XorMessage> xors;
  if (config.gamma >= config.users) return xors;
  for (const Subset& psi : enumerate_subsets(config.users, config.gamma + 1)) {
    XorMessage message{psi, FieldVector(subfiles.subfile_size())};
    for (int k : psi) {
      const auto part = subfiles.at(demand[static_cast<std::size_t>(k - 1)], psi.without(k));
      for (std::size_t i = 0; i < part.size(); ++i) message.payload[i] += part[i];
    }
    xors.push_back(std::move(message));
  }
  return xors;
}

BigInt minimal_granularity(int users, int gamma) {
  if (users < 1 || gamma < 0 || gamma > users) throw InvalidConfig("minimal_granularity: need 0 <= Gamma <= K");
  // n_j / c as a reduced fraction; c must clear every denominator.
  Rational ratio(1);
  BigInt c = 1;
  for (int j = gamma + 2; j <= users; ++j) {
    ratio *= Rational(BigInt(j - 1), BigInt(users - j + 1));
    const BigInt den = ratio.denominator();
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), den.get_mpz_t());
  }
  return c;
}

Rational DeliveryPlan::total_duration() const {
  Rational total;
  for (const auto& p : phases) total += p.duration;
  return total;
}

BigInt DeliveryPlan::total_uses() const {
  BigInt total = 0;
  for (const auto& p : phases) total += p.total_uses();
  return total;
}

const PhasePlan& DeliveryPlan::phase(int j) const {
  for (const auto& p : phases) {
    if (p.phase == j) return p;
  }
  throw std::out_of_range("plan has no phase " + std::to_string(j));
}

DeliveryPlan plan_phases(const SystemConfig& config, std::vector<int> demand) {
  validate_demand(config, demand);
  const int K = config.users;
  const int gamma = config.gamma;
  if (config.granularity < 1) throw GranularityError("granularity must be at least 1");

  DeliveryPlan plan{config, std::move(demand), {}};
  if (gamma >= K) return plan;

  // One time slot = one file's worth of single-antenna channel uses.
  const BigInt slot = config.file_symbols();
  BigInt uses = config.granularity;
  for (int j = gamma + 1; j <= K; ++j) {
    if (j > gamma + 1) {
      const BigInt carried = BigInt(j - 1) * uses;
      if (carried % (K - j + 1) != 0) {
        throw GranularityError("c = " + config.granularity.get_str() + " leaves n_" + std::to_string(j) +
                               " = " + carried.get_str() + "/" + std::to_string(K - j + 1) + " fractional");
      }
      uses = carried / (K - j + 1);
    }
    PhasePlan phase;
    phase.users = K;
    phase.phase = j;
    phase.group_count = binomial(static_cast<unsigned long>(K), static_cast<unsigned long>(j));
    phase.uses_per_group = uses;
    phase.active_antennas = K - j + 1;
    if (j > gamma + 1) phase.combining = cauchy_combining_matrix(j);
    phase.duration = Rational(phase.group_count * uses, slot);
    plan.phases.push_back(std::move(phase));
  }
  return plan;
}

}  // namespace synergy
