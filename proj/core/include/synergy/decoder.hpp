#pragma once

#include <map>
#include <string>
#include <vector>

#include "synergy/combinatorics.hpp"
#include "synergy/field.hpp"
#include "synergy/placement.hpp"
#include "synergy/simulator.hpp"

namespace synergy {

/// L_{group, observer}: what `observer` received while `group` was served in `phase`.
struct OverheardKey {
  int phase = 0;
  Subset group;
  int observer = 0;

  friend bool operator==(const OverheardKey&, const OverheardKey&) = default;
  friend auto operator<=>(const OverheardKey&, const OverheardKey&) = default;
};

struct DecodeResult {
  int user = 0;
  FieldVector file;
  /// Every overheard stream the user reconstructed on the way down.
  std::map<OverheardKey, FieldVector> recovered;
  std::size_t solves = 0;
  std::size_t max_system_dim = 0;
};

/// Backward decoding at receiver `cache.user`: phases K down to Gamma+2 strip
/// the user's own earlier observation from each combination and invert the
/// remaining Cauchy minor, phase Gamma+1 solves for X_psi, and cached subfiles
/// peel the folded messages. Uses only the user's own observations, the
/// delayed channel state of all users, and Z_k.
/// Throws SingularMatrix or MissingObservation.
DecodeResult backward_decode(const Transcript& transcript, const CacheContents& cache);

struct UserVerdict {
  int user = 0;
  int requested = 0;
  bool match = false;
  std::size_t solves = 0;
  std::size_t max_system_dim = 0;
  std::string error;  ///< empty unless decoding threw
};

struct VerificationReport {
  std::vector<UserVerdict> users;

  [[nodiscard]] bool all_pass() const;
};

/// Decodes every user against the library and records exact-match verdicts.
VerificationReport verify_all(const Transcript& transcript, const Library& library);

/// {"schema": ..., "all_pass": ..., "users": [{user, requested, match, solves, max_system_dim}]}
std::string to_json(const VerificationReport& report);

}  // namespace synergy
