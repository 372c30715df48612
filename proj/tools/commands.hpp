#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synergy/rational.hpp"

namespace synergy::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

struct RunConfig {
  int users = 0;
  int files = 0;
  std::optional<Rational> cache;
  std::optional<int> gamma;
  std::optional<std::uint64_t> seed;
  std::string demand = "distinct";
  std::string library_path;
  std::string out_prefix;
  std::string format = "json";
  bool save_transcript = false;
};

struct SweepConfig {
  std::string mode = "gap";
  int max_users = 64;
  std::string gaps = "1..10";
  unsigned long users = 10000;
  std::string out_path;
};

struct VerifyConfig {
  bool quick = false;
  bool tamper_combining = false;
};

/// "1,2,3", "distinct" (user k asks for file k) or "uniform-random".
std::vector<int> parse_demand(const std::string& text, int users, int files, std::uint64_t seed);
/// "a..b" (integer steps), "a,b,c" or a single value.
std::vector<double> parse_range(const std::string& text);
/// SYNERGY_SEED when set, otherwise 1.
std::uint64_t default_seed();

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);
int cmd_library(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Usage errors return 2, --help returns 0.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace synergy::cli
