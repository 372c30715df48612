#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "synergy/combinatorics.hpp"
#include "synergy/field.hpp"
#include "synergy/rational.hpp"

namespace synergy {

/// (K, N, M) cache-aided broadcast setup with integral replication factor
/// Gamma = K M / N and symbol granularity multiplier c.
struct SystemConfig {
  int users = 0;       ///< K: users, and transmit antennas.
  int files = 0;       ///< N: library size.
  Rational cache;      ///< M: per-user cache size, in files.
  int gamma = 0;       ///< Gamma = K M / N.
  BigInt granularity;  ///< c: channel uses per first-phase stream.

  /// Validates 1 <= K <= N, 0 <= M <= N and Gamma integral; c defaults to the
  /// smallest granularity that keeps every phase integral.
  static SystemConfig make(int users, int files, const Rational& cache);
  static SystemConfig from_gamma(int users, int files, int gamma);

  /// M / N.
  [[nodiscard]] Rational cache_fraction() const { return cache / Rational(files); }
  /// Symbols per subfile: (K - Gamma) c, or c when Gamma = K.
  [[nodiscard]] BigInt subfile_symbols() const;
  /// Symbols per file: C(K, Gamma) times subfile_symbols(). One time slot
  /// (one file to one user, no interference) is this many channel uses.
  [[nodiscard]] BigInt file_symbols() const;

  /// Narrowing accessors for symbol-level simulation; throw InvalidConfig if too large.
  [[nodiscard]] std::size_t subfile_size() const;
  [[nodiscard]] std::size_t file_size() const;
  [[nodiscard]] std::size_t granularity_size() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// N files of field symbols, all of length config.file_symbols().
struct Library {
  std::vector<FieldVector> files;

  friend bool operator==(const Library&, const Library&) = default;
};

/// Uniform random library derived from `seed`.
Library generate_library(const SystemConfig& config, std::uint64_t seed);

/// Binary library file: little-endian uint32 header
/// [magic "SYLB", version, K, N, M_num, M_den, c, p] followed by the N files
/// concatenated as uint32 symbols.
void write_library(const std::filesystem::path& path, const SystemConfig& config, const Library& library);
/// Reads a library file, returning its config and contents. Throws FormatError.
std::pair<SystemConfig, Library> read_library(const std::filesystem::path& path);

/// W_{n,tau}: file n (1-based) and cache set tau with |tau| = Gamma.
struct SubfileIndex {
  int file = 0;
  Subset tau;

  friend bool operator==(const SubfileIndex&, const SubfileIndex&) = default;
  friend auto operator<=>(const SubfileIndex&, const SubfileIndex&) = default;
};

/// All subfiles W_{n,tau}, stored densely by (n, rank(tau)).
class SubfileTable {
 public:
  SubfileTable() = default;
  SubfileTable(int users, int gamma, int files, std::size_t subfile_size);

  [[nodiscard]] int users() const { return users_; }
  [[nodiscard]] int gamma() const { return gamma_; }
  [[nodiscard]] int files() const { return files_; }
  [[nodiscard]] std::size_t subfile_size() const { return subfile_size_; }
  /// C(K, Gamma).
  [[nodiscard]] std::size_t subfiles_per_file() const { return per_file_; }

  [[nodiscard]] std::span<const Fp> at(int file, const Subset& tau) const;
  [[nodiscard]] std::span<Fp> at(int file, const Subset& tau);
  [[nodiscard]] std::span<const Fp> at(const SubfileIndex& index) const { return at(index.file, index.tau); }

 private:
  [[nodiscard]] std::size_t offset(int file, const Subset& tau) const;

  int users_ = 0;
  int gamma_ = 0;
  int files_ = 0;
  std::size_t subfile_size_ = 0;
  std::size_t per_file_ = 0;
  FieldVector symbols_;
};

/// Z_k: every W_{n,tau} with k in tau.
struct CacheContents {
  int user = 0;
  std::map<SubfileIndex, FieldVector> entries;

  [[nodiscard]] bool holds(int file, const Subset& tau) const;
  [[nodiscard]] const FieldVector& at(int file, const Subset& tau) const;
  [[nodiscard]] std::size_t symbol_count() const;
};

/// Splits each file into C(K, Gamma) contiguous blocks, block i going to the
/// i-th Gamma-subset in lexicographic order. Throws LengthMismatch.
SubfileTable subpacketize(const SystemConfig& config, const Library& library);

/// One cache per user, in user order.
std::vector<CacheContents> fill_caches(const SystemConfig& config, const SubfileTable& subfiles);

/// Concatenates the subfiles of `file` in canonical order (inverse of subpacketize).
FieldVector assemble_file(const SubfileTable& subfiles, int file);

}  // namespace synergy
