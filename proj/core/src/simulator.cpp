#include "synergy/simulator.hpp"

#include <algorithm>

#include "synergy/errors.hpp"

namespace synergy {

void ObservationLog::append(std::span<const Fp> observations) {
  if (observations.size() != per_user_.size()) {
    throw std::invalid_argument("ObservationLog::append: one observation per user expected");
  }
  for (std::size_t k = 0; k < per_user_.size(); ++k) per_user_[k].push_back(observations[k]);
}

Fp ObservationLog::at(int user, std::uint64_t t) const {
  if (user < 1 || user > users()) throw std::out_of_range("ObservationLog: user " + std::to_string(user));
  const auto& log = per_user_[static_cast<std::size_t>(user - 1)];
  if (t >= log.size()) {
    throw MissingObservation("no observation for user " + std::to_string(user) + " at use " + std::to_string(t));
  }
  return log[t];
}

void DelayedCsitLedger::publish(const FieldMatrix& channel, std::span<const Fp> observations) {
  channels_.push_back(channel);
  observations_.append(observations);
}

void DelayedCsitLedger::require_visible(std::uint64_t t) const {
  if (t >= channels_.size()) {
    throw CausalityViolation("transmitter read use " + std::to_string(t) + " but only " +
                             std::to_string(channels_.size()) + " uses have been fed back");
  }
}

Fp DelayedCsitLedger::observation(int user, std::uint64_t t) const {
  require_visible(t);
  return observations_.at(user, t);
}

const FieldMatrix& DelayedCsitLedger::channel(std::uint64_t t) const {
  require_visible(t);
  return channels_[t];
}

std::uint64_t Transcript::first_use(int phase, const Subset& group) const {
  std::uint64_t start = 0;
  for (const auto& p : plan.phases) {
    if (p.phase == phase) return start + group.rank() * p.uses_per_group.get_ui();
    start += p.total_uses().get_ui();
  }
  throw std::out_of_range("plan has no phase " + std::to_string(phase));
}

namespace {

// Every receiver k in psi decodes the use from its own row and the rows of the
// users outside psi, restricted to the active antennas.
bool decodable(const FieldMatrix& channel, const Subset& psi, int active) {
  const int K = psi.ground();
  std::vector<std::size_t> rows;
  for (int k : psi) {
    rows.assign(1, static_cast<std::size_t>(k - 1));
    for (int other = 1; other <= K; ++other) {
      if (!psi.contains(other)) rows.push_back(static_cast<std::size_t>(other - 1));
    }
    if (rank(channel.select(rows, static_cast<std::size_t>(active))) != static_cast<std::size_t>(active)) {
      return false;
    }
  }
  return true;
}

class Transmitter {
 public:
  Transmitter(const DeliveryPlan& plan, std::uint64_t seed, DeliveryOptions options)
      : plan_(plan),
        users_(plan.config.users),
        rng_(SeededRng::derive(seed, 0x4348414e4e454c00ull)),
        options_(options),
        ledger_(plan.config.users) {
    transcript_.plan = plan;
    transcript_.seed = seed;
    transcript_.observations = ObservationLog(users_);
  }

  // Sends `streams` (active antennas x uses, antenna-major) for one group.
  void send_group(const PhasePlan& phase, const Subset& group, std::span<const Fp> streams, std::size_t uses,
                  std::optional<std::uint64_t> latest_input) {
    const auto active = static_cast<std::size_t>(phase.active_antennas);
    for (std::size_t u = 0; u < uses; ++u) {
      ChannelUse use;
      use.t = transcript_.uses.size();
      use.phase = phase.phase;
      use.group = group;
      use.slot = u;
      use.channel = draw_channel(group, phase.active_antennas);
      use.transmitted.assign(static_cast<std::size_t>(users_), Fp());
      for (std::size_t a = 0; a < active; ++a) use.transmitted[a] = streams[a * uses + u];
      use.latest_input = latest_input;
      const FieldVector received = use.channel * use.transmitted;
      transcript_.observations.append(received);
      // Feedback arrives only once the use is over.
      ledger_.publish(use.channel, received);
      transcript_.uses.push_back(std::move(use));
    }
  }

  const DelayedCsitLedger& ledger() const { return ledger_; }
  Transcript& transcript() { return transcript_; }

 private:
  Fp draw_coefficient() {
    if (options_.channel_alphabet == 0) return rng_.uniform_nonzero();
    return Fp(1 + rng_.next_u64() % options_.channel_alphabet);
  }

  FieldMatrix draw_channel(const Subset& group, int active) {
    int redraws = 0;
    while (true) {
      FieldMatrix h(static_cast<std::size_t>(users_), static_cast<std::size_t>(users_));
      for (std::size_t r = 0; r < h.rows(); ++r) {
        for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = draw_coefficient();
      }
      if (decodable(h, group, active)) return h;
      if (!options_.resample_degenerate || ++redraws > options_.max_resamples) {
        throw DegenerateChannel("channel use " + std::to_string(transcript_.uses.size()) + " (phase " +
                                std::to_string(group.size()) + ", group " + group.to_string() +
                                ") is rank deficient for some receiver");
      }
      ++transcript_.resampled_uses;
    }
  }

  const DeliveryPlan& plan_;
  int users_;
  SeededRng rng_;
  DeliveryOptions options_;
  DelayedCsitLedger ledger_;
  Transcript transcript_;
};

}  // namespace

Transcript run_delivery(const DeliveryPlan& plan, const Library& library, std::uint64_t seed,
                        DeliveryOptions options) {
  const SystemConfig& config = plan.config;
  Transmitter tx(plan, seed, options);
  if (plan.phases.empty()) return std::move(tx.transcript());

  const SubfileTable subfiles = subpacketize(config, library);
  const std::vector<XorMessage> xors = build_xors(config, subfiles, plan.demand);

  // Phase Gamma+1: X_psi split antenna-major into K - Gamma streams of c symbols.
  const PhasePlan& first = plan.phases.front();
  const std::size_t c = config.granularity_size();
  for (const XorMessage& x : xors) tx.send_group(first, x.psi, x.payload, c, std::nullopt);

  // Phase j: combine the j observations {L_{psi\{k},k}} from phase j-1, flatten
  // combo-row-major / time-minor, refill K - j + 1 antenna streams.
  for (std::size_t p = 1; p < plan.phases.size(); ++p) {
    const PhasePlan& phase = plan.phases[p];
    const PhasePlan& previous = plan.phases[p - 1];
    const int j = phase.phase;
    const auto prev_uses = static_cast<std::size_t>(previous.uses_per_group.get_ui());
    const auto uses = static_cast<std::size_t>(phase.uses_per_group.get_ui());
    const FieldMatrix& f = phase.combining;
    for (const Subset& psi : phase.groups()) {
      std::vector<FieldVector> inputs;
      std::uint64_t latest = 0;
      for (int k : psi) {
        const std::uint64_t start = tx.transcript().first_use(j - 1, psi.without(k));
        FieldVector stream(prev_uses);
        for (std::size_t u = 0; u < prev_uses; ++u) stream[u] = tx.ledger().observation(k, start + u);
        latest = std::max<std::uint64_t>(latest, start + prev_uses - 1);
        inputs.push_back(std::move(stream));
      }
      FieldVector flat(static_cast<std::size_t>(j - 1) * prev_uses);
      for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t m = 0; m < f.cols(); ++m) {
          const Fp coeff = f(i, m);
          for (std::size_t u = 0; u < prev_uses; ++u) flat[i * prev_uses + u] += coeff * inputs[m][u];
        }
      }
      tx.send_group(phase, psi, flat, uses, latest);
    }
  }
  return std::move(tx.transcript());
}

Transcript replay(const SystemConfig& config, std::vector<int> demand, std::uint64_t seed, DeliveryOptions options) {
  const Library library = generate_library(config, seed);
  return run_delivery(plan_phases(config, std::move(demand)), library, seed, options);
}

}  // namespace synergy
