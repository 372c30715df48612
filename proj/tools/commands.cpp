#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "synergy/bounds.hpp"
#include "synergy/decoder.hpp"
#include "synergy/errors.hpp"
#include "synergy/placement.hpp"
#include "synergy/reports.hpp"
#include "synergy/scheduler.hpp"
#include "synergy/simulator.hpp"

namespace synergy::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDemandStream = 0x44454d414e440000ull;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

SystemConfig resolve_config(const RunConfig& rc) {
  if (rc.cache && rc.gamma) throw UsageError("give either -M or --gamma, not both");
  if (rc.gamma) return SystemConfig::from_gamma(rc.users, rc.files, *rc.gamma);
  if (!rc.cache) throw UsageError("one of -M or --gamma is required");
  return SystemConfig::make(rc.users, rc.files, *rc.cache);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

json demand_json(std::span<const int> demand) { return json(std::vector<int>(demand.begin(), demand.end())); }

// --- verify battery --------------------------------------------------------

struct Check {
  std::string name;
  std::function<void()> body;
};

void check_telescoping(int max_users) {
  for (int k = 1; k <= max_users; ++k) {
    for (int g = 0; g < k; ++g) {
      const auto config = SystemConfig::from_gamma(k, k, g);
      const auto plan = plan_phases(config, std::vector<int>(static_cast<std::size_t>(k), 1));
      const std::string cell = "K=" + std::to_string(k) + " Gamma=" + std::to_string(g);
      if (plan.total_duration() != achievable_T(k, g)) throw CheckFailed(cell + ": duration differs from H_K - H_Gamma");
      const Rational first = plan.phases.front().duration * Rational(g + 1);
      for (const auto& p : plan.phases) {
        if (p.duration * Rational(p.phase) != first) {
          throw CheckFailed(cell + ": phase " + std::to_string(p.phase) + " breaks the 1/j law");
        }
      }
      if (Rational(plan.total_uses()) != plan.total_duration() * Rational(config.file_symbols())) {
        throw CheckFailed(cell + ": channel uses disagree with T");
      }
    }
  }
}

void check_cache_identity(int max_users) {
  for (int k = 1; k <= max_users; ++k) {
    for (int g = 0; g <= k; ++g) {
      const auto config = SystemConfig::from_gamma(k, k, g);
      const auto caches = fill_caches(config, subpacketize(config, generate_library(config, 1)));
      const BigInt library_symbols = BigInt(config.files) * config.file_symbols();
      for (const auto& cache : caches) {
        if (Rational(BigInt(cache.symbol_count())) != config.cache_fraction() * Rational(library_symbols)) {
          throw CheckFailed("K=" + std::to_string(k) + " Gamma=" + std::to_string(g) + " user " +
                            std::to_string(cache.user) + ": cache size is not gamma times the library");
        }
      }
    }
  }
}

void check_end_to_end(int max_users, int seeds, bool tamper) {
  for (int k = 2; k <= max_users; ++k) {
    for (int g = 0; g <= k; ++g) {
      const auto config = SystemConfig::from_gamma(k, k, g);
      std::vector<int> demand(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) demand[static_cast<std::size_t>(i)] = i + 1;
      const auto plan = plan_phases(config, demand);
      for (int s = 1; s <= seeds; ++s) {
        const auto seed = static_cast<std::uint64_t>(s);
        const Library library = generate_library(config, seed);
        Transcript transcript = run_delivery(plan, library, seed, {.resample_degenerate = true});
        if (tamper) {
          for (auto& p : transcript.plan.phases) {
            if (p.combining.rows() > 0) {
              p.combining(0, 0) += Fp(1);
              break;
            }
          }
        }
        const std::string cell =
            "K=" + std::to_string(k) + " Gamma=" + std::to_string(g) + " seed=" + std::to_string(s);
        if (Rational(BigInt(transcript.uses.size())) != achievable_T(k, g) * Rational(config.file_symbols())) {
          throw CheckFailed(cell + ": channel uses disagree with T");
        }
        for (const auto& v : verify_all(transcript, library).users) {
          if (!v.match) {
            throw CheckFailed(cell + ": user " + std::to_string(v.user) + " did not recover file " +
                              std::to_string(v.requested) + (v.error.empty() ? "" : " (" + v.error + ")"));
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<int> parse_demand(const std::string& text, int users, int files, std::uint64_t seed) {
  std::vector<int> demand;
  if (text == "distinct") {
    if (users > files) throw UsageError("distinct demand needs K <= N");
    for (int k = 1; k <= users; ++k) demand.push_back(k);
  } else if (text == "uniform-random") {
    SeededRng rng(SeededRng::derive(seed, kDemandStream));
    for (int k = 0; k < users; ++k) {
      demand.push_back(static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(files)) + 1);
    }
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) demand.push_back(parse_int(item));
    if (static_cast<int>(demand.size()) != users) {
      throw UsageError("demand lists " + std::to_string(demand.size()) + " files for " + std::to_string(users) +
                       " users");
    }
  }
  return demand;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> values;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range: " + text);
    for (int g = lo; g <= hi; ++g) values.push_back(g);
    return values;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("empty range");
  return values;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SYNERGY_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SYNERGY_SEED is not an integer: ") + env);
  }
  return 1;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  SystemConfig config;
  std::vector<int> demand;
  Library library;
  std::uint64_t seed = 0;
  try {
    seed = rc.seed ? *rc.seed : default_seed();
    if (!rc.library_path.empty()) {
      auto [file_config, file_library] = read_library(rc.library_path);
      if ((rc.users != 0 && rc.users != file_config.users) || (rc.files != 0 && rc.files != file_config.files) ||
          (rc.cache && *rc.cache != file_config.cache) || (rc.gamma && *rc.gamma != file_config.gamma)) {
        throw UsageError("flags disagree with the parameters stored in " + rc.library_path);
      }
      config = std::move(file_config);
      library = std::move(file_library);
    } else {
      config = resolve_config(rc);
      library = generate_library(config, seed);
    }
    if (rc.format != "json" && rc.format != "csv") throw UsageError("--format must be json or csv");
    demand = parse_demand(rc.demand, config.users, config.files, seed);
    validate_demand(config, demand);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (config.users > 8) err << "warning: K = " << config.users << " gives " << config.file_symbols() << " symbols per file\n";

  DeliveryPlan plan;
  Transcript transcript;
  try {
    plan = plan_phases(config, demand);
    transcript = run_delivery(plan, library, seed, {.resample_degenerate = true});
  } catch (const Error& e) {
    err << "error: delivery failed: " << e.what() << '\n';
    return kFailure;
  }
  const VerificationReport report = verify_all(transcript, library);
  const Rational t = plan.total_duration();

  json summary{{"schema", "synergy-simulate/1"},
               {"K", config.users},
               {"N", config.files},
               {"M", config.cache.to_string()},
               {"Gamma", config.gamma},
               {"c", config.granularity.get_str()},
               {"seed", seed},
               {"demand", demand_json(demand)},
               {"T", t.to_string()},
               {"T_decimal", t.to_double()},
               {"channel_uses", transcript.uses.size()},
               {"file_symbols", config.file_symbols().get_str()},
               {"resampled_uses", transcript.resampled_uses},
               {"all_decoded", report.all_pass()}};

  if (rc.format == "json") {
    out << summary.dump(2) << '\n';
  } else {
    out << "K,N,M,Gamma,seed,T,T_decimal,channel_uses,file_symbols,all_decoded\n"
        << config.users << ',' << config.files << ',' << config.cache << ',' << config.gamma << ',' << seed << ','
        << t << ',' << decimal(t.to_double()) << ',' << transcript.uses.size() << ',' << config.file_symbols()
        << ',' << (report.all_pass() ? "true" : "false") << '\n';
  }

  if (!rc.out_prefix.empty()) {
    try {
      json plan_doc = json::parse(plan_to_json(plan, config.users <= 8));
      summary["plan"] = std::move(plan_doc);
      write_file(rc.out_prefix + ".summary.json", summary.dump(2) + "\n");
      write_file(rc.out_prefix + ".verification.json", to_json(report) + "\n");
      if (rc.save_transcript) save_transcript(transcript, rc.out_prefix + ".transcript.json");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kFailure;
    }
  }

  for (const auto& v : report.users) {
    if (!v.match) {
      err << "user " << v.user << " failed to decode file " << v.requested;
      if (!v.error.empty()) err << ": " << v.error;
      err << '\n';
    }
  }
  return report.all_pass() ? kPass : kFailure;
}

int cmd_library(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  try {
    const SystemConfig config = resolve_config(rc);
    const std::uint64_t seed = rc.seed ? *rc.seed : default_seed();
    if (rc.out_prefix.empty()) throw UsageError("--out is required");
    write_library(rc.out_prefix, config, generate_library(config, seed));
    out << "wrote " << config.files << " files of " << config.file_symbols() << " symbols to " << rc.out_prefix << '\n';
    return kPass;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int cmd_sweep(const SweepConfig& sc, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  try {
    if (sc.mode == "gap") {
      if (sc.max_users < 2 || sc.max_users > 256) throw UsageError("--kmax must be in [2, 256]");
      const GapCertificate cert = gap_certificate(sc.max_users);
      write_gap_csv(csv, cert);
      err << "max gap " << cert.max_gap << " (" << decimal(cert.max_gap.to_double()) << ") at K=" << cert.max_users
          << " Gamma=" << cert.max_gamma << '\n';
    } else if (sc.mode == "dof") {
      if (sc.max_users < 2 || sc.max_users > 256) throw UsageError("--kmax must be in [2, 256]");
      write_dof_csv(csv, dof_sweep(sc.max_users));
    } else if (sc.mode == "buffer") {
      if (sc.users < 1) throw UsageError("--K must be positive");
      write_buffer_csv(csv, buffer_sweep(parse_range(sc.gaps), sc.users));
    } else {
      throw UsageError("--mode must be gap, dof or buffer");
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CertificateViolation& e) {
    err << "certificate violation: " << e.what() << '\n';
    return kFailure;
  }
  if (sc.out_path.empty()) {
    out << csv.str();
  } else {
    try {
      write_file(sc.out_path, csv.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kFailure;
    }
  }
  return kPass;
}

int cmd_verify(const VerifyConfig& vc, std::ostream& out, std::ostream& err) {
  const int decode_users = vc.quick ? 4 : 6;
  const int seeds = vc.quick ? 3 : 10;
  const std::vector<Check> checks{
      {"telescoping", [&] { check_telescoping(64); }},
      {"cache-identity", [&] { check_cache_identity(decode_users); }},
      {"gap-certificate", [&] { gap_certificate(vc.quick ? 32 : 64); }},
      {"case2-endpoints", [] { case2_endpoint_check(); }},
      {"case3-tail", [&] { case3_check(vc.quick ? 32 : 64); }},
      {"synergy-margin",
       [] {
         const double margin = synergy(100, 1).margin;
         if (!(margin > 1e-6)) throw CheckFailed("K=100 Gamma=1 margin " + decimal(margin));
       }},
      {"end-to-end", [&] { check_end_to_end(decode_users, seeds, vc.tamper_combining); }},
  };
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    try {
      check.body();
    } catch (const std::exception& e) {
      out << "[FAIL] " << check.name << ": " << e.what() << '\n';
      err << "verify: first failing check is " << check.name << '\n';
      return kFailure;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out << "[ ok ] " << check.name << " (" << std::fixed << std::setprecision(2) << elapsed.count() << " s)\n"
        << std::defaultfloat;
  }
  out << "verify: " << checks.size() << " checks passed\n";
  return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-aided broadcast delivery with delayed channel feedback"};
  app.name("synergy");
  app.require_subcommand(1);

  RunConfig rc;
  std::string cache_text;
  int gamma = -1;
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("-K,--users", rc.users, "Number of users")->check(CLI::PositiveNumber);
    sub->add_option("-N,--files", rc.files, "Number of files")->check(CLI::PositiveNumber);
    sub->add_option("-M,--cache", cache_text, "Cache size in files, e.g. 1 or 3/2");
    sub->add_option("--gamma", gamma, "Replication factor K M / N")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", rc.seed, "Seed (default: $SYNERGY_SEED, else 1)");
  };

  auto* simulate = app.add_subcommand("simulate", "Place, deliver, decode and verify one configuration");
  add_system(simulate);
  simulate->add_option("--demand", rc.demand, "distinct | uniform-random | comma-separated file list");
  simulate->add_option("--library", rc.library_path, "Read the library from a binary file");
  simulate->add_option("--out", rc.out_prefix, "Write <prefix>.summary.json and <prefix>.verification.json");
  simulate->add_option("--format", rc.format, "Report format on stdout")->check(CLI::IsMember({"json", "csv"}));
  simulate->add_flag("--save-transcript", rc.save_transcript, "Also write <prefix>.transcript.json and .bin");

  auto* library = app.add_subcommand("library", "Generate a random library file");
  add_system(library);
  library->add_option("--out", rc.out_prefix, "Output path")->required();

  SweepConfig sc;
  auto* sweep = app.add_subcommand("sweep", "Emit CSV for a parameter sweep");
  sweep->add_option("--mode", sc.mode, "gap | dof | buffer")->check(CLI::IsMember({"gap", "dof", "buffer"}));
  sweep->add_option("--kmax", sc.max_users, "Largest K for gap and dof modes");
  sweep->add_option("--G", sc.gaps, "Target gaps for buffer mode: a..b or a,b,c");
  sweep->add_option("--K", sc.users, "Users for buffer mode");
  sweep->add_option("--out", sc.out_path, "Write CSV here instead of stdout");

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Run the property battery");
  verify->add_flag("--quick", vc.quick, "Decode only up to K = 4");
  verify->add_flag("--tamper-combining", vc.tamper_combining, "Corrupt the receivers' combining matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (!cache_text.empty()) rc.cache = Rational::parse(cache_text);
    if (gamma >= 0) rc.gamma = gamma;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(rc, out, err);
    if (library->parsed()) return cmd_library(rc, out, err);
    if (sweep->parsed()) return cmd_sweep(sc, out, err);
    return cmd_verify(vc, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace synergy::cli
