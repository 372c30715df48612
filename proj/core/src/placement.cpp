#include "synergy/placement.hpp"

#include <limits>
#include <stdexcept>

#include "synergy/errors.hpp"
#include "synergy/scheduler.hpp"

namespace synergy {

namespace {

std::size_t narrow(const BigInt& value, const char* what) {
  if (value < 0 || !value.fits_ulong_p() ||
      value.get_ui() > std::numeric_limits<std::size_t>::max() / 8) {
    throw InvalidConfig(std::string(what) + " too large for symbol-level simulation: " + value.get_str());
  }
  return static_cast<std::size_t>(value.get_ui());
}

}  // namespace

SystemConfig SystemConfig::make(int users, int files, const Rational& cache) {
  if (users < 1) throw InvalidConfig("K must be at least 1");
  if (files < users) throw InvalidConfig("need K <= N (K=" + std::to_string(users) + ", N=" + std::to_string(files) + ")");
  if (cache.sign() < 0 || cache > Rational(files)) throw InvalidConfig("need 0 <= M <= N");
  const Rational gamma = cache * Rational(users) / Rational(files);
  if (!gamma.is_integer()) {
    throw InvalidConfig("K*M/N = " + gamma.to_string() + " is not an integer");
  }
  SystemConfig config;
  config.users = users;
  config.files = files;
  config.cache = cache;
  config.gamma = static_cast<int>(gamma.numerator().get_si());
  config.granularity = minimal_granularity(users, config.gamma);
  return config;
}

SystemConfig SystemConfig::from_gamma(int users, int files, int gamma) {
  if (users < 1) throw InvalidConfig("K must be at least 1");
  if (gamma < 0 || gamma > users) throw InvalidConfig("need 0 <= Gamma <= K");
  return make(users, files, Rational(BigInt(gamma) * files, BigInt(users)));
}

BigInt SystemConfig::subfile_symbols() const {
  return BigInt(gamma < users ? users - gamma : 1) * granularity;
}

BigInt SystemConfig::file_symbols() const {
  return binomial(static_cast<unsigned long>(users), static_cast<unsigned long>(gamma)) * subfile_symbols();
}

std::size_t SystemConfig::subfile_size() const { return narrow(subfile_symbols(), "subfile size"); }
std::size_t SystemConfig::file_size() const { return narrow(file_symbols(), "file size"); }
std::size_t SystemConfig::granularity_size() const { return narrow(granularity, "granularity"); }

Library generate_library(const SystemConfig& config, std::uint64_t seed) {
  SeededRng rng(SeededRng::derive(seed, 0x4c49425241525900ull));
  const std::size_t length = config.file_size();
  Library library;
  library.files.resize(static_cast<std::size_t>(config.files));
  for (auto& file : library.files) {
    file.resize(length);
    for (auto& symbol : file) symbol = rng.uniform();
  }
  return library;
}

SubfileTable::SubfileTable(int users, int gamma, int files, std::size_t subfile_size)
    : users_(users),
      gamma_(gamma),
      files_(files),
      subfile_size_(subfile_size),
      per_file_(binomial_u64(static_cast<unsigned>(users), static_cast<unsigned>(gamma))),
      symbols_(static_cast<std::size_t>(files) * per_file_ * subfile_size) {}

std::size_t SubfileTable::offset(int file, const Subset& tau) const {
  if (file < 1 || file > files_) throw std::out_of_range("SubfileTable: file index " + std::to_string(file));
  if (tau.size() != gamma_ || tau.ground() != users_) {
    throw std::invalid_argument("SubfileTable: tau " + tau.to_string() + " is not a Gamma-subset of [K]");
  }
  return (static_cast<std::size_t>(file - 1) * per_file_ + tau.rank()) * subfile_size_;
}

std::span<const Fp> SubfileTable::at(int file, const Subset& tau) const {
  return std::span<const Fp>(symbols_).subspan(offset(file, tau), subfile_size_);
}

std::span<Fp> SubfileTable::at(int file, const Subset& tau) {
  return std::span<Fp>(symbols_).subspan(offset(file, tau), subfile_size_);
}

bool CacheContents::holds(int file, const Subset& tau) const {
  return entries.contains(SubfileIndex{file, tau});
}

const FieldVector& CacheContents::at(int file, const Subset& tau) const {
  const auto it = entries.find(SubfileIndex{file, tau});
  if (it == entries.end()) {
    throw std::out_of_range("user " + std::to_string(user) + " does not cache W_{" + std::to_string(file) +
                            "," + tau.to_string() + "}");
  }
  return it->second;
}

std::size_t CacheContents::symbol_count() const {
  std::size_t total = 0;
  for (const auto& [index, symbols] : entries) total += symbols.size();
  return total;
}

SubfileTable subpacketize(const SystemConfig& config, const Library& library) {
  const std::size_t file_size = config.file_size();
  if (library.files.size() != static_cast<std::size_t>(config.files)) {
    throw LengthMismatch("library holds " + std::to_string(library.files.size()) + " files, config says " +
                         std::to_string(config.files));
  }
  SubfileTable table(config.users, config.gamma, config.files, config.subfile_size());
  for (int n = 1; n <= config.files; ++n) {
    const FieldVector& file = library.files[static_cast<std::size_t>(n - 1)];
    if (file.size() != file_size || file.size() % table.subfiles_per_file() != 0) {
      throw LengthMismatch("file " + std::to_string(n) + " has " + std::to_string(file.size()) +
                           " symbols, expected " + std::to_string(file_size));
    }
    std::size_t pos = 0;
    for (const Subset& tau : enumerate_subsets(config.users, config.gamma)) {
      auto block = table.at(n, tau);
      std::copy_n(file.begin() + static_cast<std::ptrdiff_t>(pos), block.size(), block.begin());
      pos += block.size();
    }
  }
  return table;
}

std::vector<CacheContents> fill_caches(const SystemConfig& config, const SubfileTable& subfiles) {
  std::vector<CacheContents> caches(static_cast<std::size_t>(config.users));
  for (int k = 1; k <= config.users; ++k) caches[static_cast<std::size_t>(k - 1)].user = k;
  for (const Subset& tau : enumerate_subsets(config.users, config.gamma)) {
    for (int k : tau) {
      auto& cache = caches[static_cast<std::size_t>(k - 1)];
      for (int n = 1; n <= config.files; ++n) {
        const auto block = subfiles.at(n, tau);
        cache.entries.emplace(SubfileIndex{n, tau}, FieldVector(block.begin(), block.end()));
      }
    }
  }
  return caches;
}

FieldVector assemble_file(const SubfileTable& subfiles, int file) {
  FieldVector out;
  out.reserve(subfiles.subfiles_per_file() * subfiles.subfile_size());
  for (const Subset& tau : enumerate_subsets(subfiles.users(), subfiles.gamma())) {
    const auto block = subfiles.at(file, tau);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace synergy
