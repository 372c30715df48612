#include <array>
#include <fstream>
#include <limits>

#include "synergy/errors.hpp"
#include "synergy/placement.hpp"

namespace synergy {

namespace {

constexpr std::uint32_t kLibraryMagic = 0x424c5953u;  // "SYLB" little-endian
constexpr std::uint32_t kLibraryVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v & 0xffu), static_cast<char>((v >> 8) & 0xffu),
                                  static_cast<char>((v >> 16) & 0xffu), static_cast<char>((v >> 24) & 0xffu)};
  os.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw FormatError("library file truncated");
  }
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

std::uint32_t to_u32(const BigInt& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p() || v.get_ui() > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError(std::string(what) + " does not fit the 32-bit library header");
  }
  return static_cast<std::uint32_t>(v.get_ui());
}

}  // namespace

void write_library(const std::filesystem::path& path, const SystemConfig& config, const Library& library) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  put_u32(os, kLibraryMagic);
  put_u32(os, kLibraryVersion);
  put_u32(os, static_cast<std::uint32_t>(config.users));
  put_u32(os, static_cast<std::uint32_t>(config.files));
  put_u32(os, to_u32(config.cache.numerator(), "M numerator"));
  put_u32(os, to_u32(config.cache.denominator(), "M denominator"));
  put_u32(os, to_u32(config.granularity, "granularity"));
  put_u32(os, Fp::kModulus);
  for (const auto& file : library.files) {
    for (Fp symbol : file) put_u32(os, symbol.value());
  }
  if (!os) throw FormatError("write to " + path.string() + " failed");
}

std::pair<SystemConfig, Library> read_library(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  if (get_u32(is) != kLibraryMagic) throw FormatError(path.string() + " is not a library file");
  if (const auto version = get_u32(is); version != kLibraryVersion) {
    throw FormatError("unsupported library file version " + std::to_string(version));
  }
  const auto users = static_cast<int>(get_u32(is));
  const auto files = static_cast<int>(get_u32(is));
  const BigInt m_num = get_u32(is);
  const BigInt m_den = get_u32(is);
  const BigInt granularity = get_u32(is);
  if (const auto modulus = get_u32(is); modulus != Fp::kModulus) {
    throw FormatError("library uses modulus " + std::to_string(modulus) + ", expected " +
                      std::to_string(Fp::kModulus));
  }
  if (m_den == 0) throw FormatError("zero M denominator in library header");
  SystemConfig config = SystemConfig::make(users, files, Rational(m_num, m_den));
  if (granularity < 1 || granularity % config.granularity != 0) {
    throw FormatError("granularity " + granularity.get_str() + " is not a multiple of the minimum " +
                      config.granularity.get_str());
  }
  config.granularity = granularity;
  Library library;
  library.files.resize(static_cast<std::size_t>(files));
  const std::size_t length = config.file_size();
  for (auto& file : library.files) {
    file.resize(length);
    for (auto& symbol : file) {
      const auto raw = get_u32(is);
      if (raw >= Fp::kModulus) throw FormatError("symbol out of field range");
      symbol = Fp(raw);
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after library data");
  return {config, library};
}

}  // namespace synergy
