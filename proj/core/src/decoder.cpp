#include "synergy/decoder.hpp"

#include <algorithm>

#include "json_codec.hpp"
#include "synergy/errors.hpp"
#include "synergy/scheduler.hpp"

namespace synergy {

namespace {

// What receiver k may read from a transcript: its own observations and the
// delayed channel state of everyone.
class ReceiverView {
 public:
  ReceiverView(const Transcript& transcript, int user) : transcript_(transcript), user_(user) {
    const BigInt expected = transcript.plan.total_uses();
    if (BigInt(static_cast<unsigned long>(transcript.uses.size())) < expected ||
        BigInt(static_cast<unsigned long>(transcript.observations.size())) < expected) {
      throw MissingObservation("transcript holds " + std::to_string(transcript.uses.size()) + " uses, plan needs " +
                               expected.get_str());
    }
  }

  [[nodiscard]] Fp own(std::uint64_t t) const { return transcript_.observations.at(user_, t); }
  [[nodiscard]] const FieldMatrix& channel(std::uint64_t t) const { return transcript_.uses.at(t).channel; }
  [[nodiscard]] std::uint64_t first_use(int phase, const Subset& group) const {
    return transcript_.first_use(phase, group);
  }

 private:
  const Transcript& transcript_;
  int user_;
};

class BackwardDecoder {
 public:
  BackwardDecoder(const Transcript& transcript, const CacheContents& cache)
      : plan_(transcript.plan),
        users_(plan_.config.users),
        user_(cache.user),
        view_(transcript, cache.user),
        cache_(cache) {
    result_.user = user_;
  }

  DecodeResult run() {
    const int gamma = plan_.config.gamma;
    const int requested = plan_.demand[static_cast<std::size_t>(user_ - 1)];
    if (gamma >= users_) {
      result_.file = cache_.at(requested, Subset::full(users_));
      return std::move(result_);
    }
    for (auto p = plan_.phases.size(); p-- > 1;) unfold_phase(plan_.phases[p], plan_.phases[p - 1]);

    std::map<Subset, FieldVector> delivered;
    for (const Subset& psi : enumerate_subsets(users_, gamma + 1)) {
      if (psi.contains(user_)) delivered.emplace(psi.without(user_), peel(psi));
    }
    for (const Subset& tau : enumerate_subsets(users_, gamma)) {
      const FieldVector& part = tau.contains(user_) ? cache_.at(requested, tau) : delivered.at(tau);
      result_.file.insert(result_.file.end(), part.begin(), part.end());
    }
    return std::move(result_);
  }

 private:
  // Solves one use of `group`: equations from this user and from every user
  // outside the group (whose observation was recovered from the next phase).
  FieldVector solve_use(const PhasePlan& phase, const Subset& group, std::uint64_t t, std::size_t u) {
    const auto active = static_cast<std::size_t>(phase.active_antennas);
    std::vector<std::size_t> rows{static_cast<std::size_t>(user_ - 1)};
    FieldVector rhs{view_.own(t)};
    for (int other = 1; other <= users_; ++other) {
      if (group.contains(other)) continue;
      rows.push_back(static_cast<std::size_t>(other - 1));
      const auto it = recovered().find(OverheardKey{phase.phase, group, other});
      if (it == recovered().end()) {
        throw MissingObservation("user " + std::to_string(user_) + " lacks L_{" + group.to_string() + "," +
                                 std::to_string(other) + "}");
      }
      rhs.push_back(it->second.at(u));
    }
    note_solve(active);
    return solve(view_.channel(t).select(rows, active), rhs);
  }

  // Antenna streams of one group, antenna-major.
  FieldVector receive_group(const PhasePlan& phase, const Subset& group) {
    const auto uses = static_cast<std::size_t>(phase.uses_per_group.get_ui());
    const auto active = static_cast<std::size_t>(phase.active_antennas);
    const std::uint64_t start = view_.first_use(phase.phase, group);
    FieldVector streams(active * uses);
    for (std::size_t u = 0; u < uses; ++u) {
      const FieldVector x = solve_use(phase, group, start + u, u);
      for (std::size_t a = 0; a < active; ++a) streams[a * uses + u] = x[a];
    }
    return streams;
  }

  // Phase j >= Gamma+2: recover {L_{psi\{k'},k'}} for k' in psi \ {k}.
  void unfold_phase(const PhasePlan& phase, const PhasePlan& previous) {
    const int j = phase.phase;
    const auto prev_uses = static_cast<std::size_t>(previous.uses_per_group.get_ui());
    const FieldMatrix& f = phase.combining;
    for (const Subset& psi : phase.groups()) {
      const int own_pos = psi.position(user_);
      if (own_pos < 0) continue;
      const FieldVector combos = receive_group(phase, psi);
      const FieldMatrix minor = inverse(f.without_column(static_cast<std::size_t>(own_pos)));
      note_solve(minor.rows());

      const std::uint64_t own_start = view_.first_use(j - 1, psi.without(user_));
      std::vector<FieldVector> others(static_cast<std::size_t>(j - 1), FieldVector(prev_uses));
      FieldVector rhs(static_cast<std::size_t>(j - 1));
      for (std::size_t u = 0; u < prev_uses; ++u) {
        const Fp own = view_.own(own_start + u);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
          rhs[i] = combos[i * prev_uses + u] - f(i, static_cast<std::size_t>(own_pos)) * own;
        }
        const FieldVector values = minor * rhs;
        for (std::size_t m = 0; m < values.size(); ++m) others[m][u] = values[m];
      }
      std::size_t m = 0;
      for (int member : psi) {
        if (member == user_) continue;
        result_.recovered.emplace(OverheardKey{j - 1, psi.without(member), member}, std::move(others[m++]));
      }
    }
  }

  // Phase Gamma+1: rebuild X_psi, then subtract the Gamma cached constituents.
  FieldVector peel(const Subset& psi) {
    FieldVector subfile = receive_group(plan_.phases.front(), psi);
    for (int other : psi) {
      if (other == user_) continue;
      const FieldVector& known = cache_.at(plan_.demand[static_cast<std::size_t>(other - 1)], psi.without(other));
      for (std::size_t i = 0; i < subfile.size(); ++i) subfile[i] -= known[i];
    }
    return subfile;
  }

  const std::map<OverheardKey, FieldVector>& recovered() const { return result_.recovered; }

  void note_solve(std::size_t dim) {
    ++result_.solves;
    result_.max_system_dim = std::max(result_.max_system_dim, dim);
  }

  const DeliveryPlan& plan_;
  int users_;
  int user_;
  ReceiverView view_;
  const CacheContents& cache_;
  DecodeResult result_;
};

}  // namespace

DecodeResult backward_decode(const Transcript& transcript, const CacheContents& cache) {
  if (cache.user < 1 || cache.user > transcript.config().users) {
    throw std::out_of_range("backward_decode: user " + std::to_string(cache.user));
  }
  return BackwardDecoder(transcript, cache).run();
}

bool VerificationReport::all_pass() const {
  return !users.empty() && std::all_of(users.begin(), users.end(), [](const UserVerdict& v) { return v.match; });
}

VerificationReport verify_all(const Transcript& transcript, const Library& library) {
  const SystemConfig& config = transcript.config();
  const auto caches = fill_caches(config, subpacketize(config, library));
  VerificationReport report;
  for (const CacheContents& cache : caches) {
    UserVerdict verdict;
    verdict.user = cache.user;
    verdict.requested = transcript.demand()[static_cast<std::size_t>(cache.user - 1)];
    try {
      const DecodeResult decoded = backward_decode(transcript, cache);
      verdict.match = decoded.file == library.files.at(static_cast<std::size_t>(verdict.requested - 1));
      verdict.solves = decoded.solves;
      verdict.max_system_dim = decoded.max_system_dim;
    } catch (const Error& e) {
      verdict.error = e.what();
    }
    report.users.push_back(std::move(verdict));
  }
  return report;
}

std::string to_json(const VerificationReport& report) {
  detail::json users = detail::json::array();
  for (const auto& v : report.users) {
    detail::json entry{{"user", v.user},
                       {"requested", v.requested},
                       {"match", v.match},
                       {"solves", v.solves},
                       {"max_system_dim", v.max_system_dim}};
    if (!v.error.empty()) entry["error"] = v.error;
    users.push_back(std::move(entry));
  }
  return detail::json{{"schema", "synergy-verification/1"}, {"all_pass", report.all_pass()}, {"users", users}}.dump(2);
}

}  // namespace synergy
