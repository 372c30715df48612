#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace synergy {

/// Element of the prime field GF(p), p = 2^31 - 1.
class Fp {
 public:
  static constexpr std::uint32_t kModulus = 0x7fffffffu;

  constexpr Fp() = default;
  /// Reduces `value` modulo p.
  constexpr explicit Fp(std::uint64_t value) : value_(reduce(value)) {}

  [[nodiscard]] constexpr std::uint32_t value() const { return value_; }
  [[nodiscard]] constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr Fp operator+(Fp a, Fp b) {
    std::uint32_t s = a.value_ + b.value_;
    if (s >= kModulus) s -= kModulus;
    return from_reduced(s);
  }
  friend constexpr Fp operator-(Fp a, Fp b) {
    return from_reduced(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + kModulus - b.value_);
  }
  friend constexpr Fp operator*(Fp a, Fp b) {
    return from_reduced(reduce(static_cast<std::uint64_t>(a.value_) * b.value_));
  }
  constexpr Fp operator-() const { return from_reduced(value_ == 0 ? 0 : kModulus - value_); }
  constexpr Fp& operator+=(Fp b) { return *this = *this + b; }
  constexpr Fp& operator-=(Fp b) { return *this = *this - b; }
  constexpr Fp& operator*=(Fp b) { return *this = *this * b; }

  [[nodiscard]] constexpr Fp pow(std::uint64_t exponent) const {
    Fp result(1);
    Fp base = *this;
    while (exponent) {
      if (exponent & 1u) result *= base;
      base *= base;
      exponent >>= 1u;
    }
    return result;
  }
  /// Multiplicative inverse by Fermat. Throws SingularMatrix for zero.
  [[nodiscard]] Fp inverse() const;

  friend constexpr bool operator==(Fp, Fp) = default;

 private:
  // Mersenne reduction: x mod (2^31 - 1) via folding the high bits.
  static constexpr std::uint32_t reduce(std::uint64_t x) {
    x = (x & kModulus) + (x >> 31);
    x = (x & kModulus) + (x >> 31);
    return x >= kModulus ? static_cast<std::uint32_t>(x - kModulus) : static_cast<std::uint32_t>(x);
  }
  static constexpr Fp from_reduced(std::uint32_t v) {
    Fp f;
    f.value_ = v;
    return f;
  }

  std::uint32_t value_ = 0;
};

using FieldVector = std::vector<Fp>;

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Fp> entries);

  static FieldMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::span<const Fp> entries() const { return entries_; }

  Fp& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  [[nodiscard]] Fp operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  [[nodiscard]] std::span<const Fp> row(std::size_t r) const {
    return std::span<const Fp>(entries_).subspan(r * cols_, cols_);
  }

  /// Copy with column `col` removed.
  [[nodiscard]] FieldMatrix without_column(std::size_t col) const;
  /// Rows `row_ids`, first `ncols` columns.
  [[nodiscard]] FieldMatrix select(std::span<const std::size_t> row_ids, std::size_t ncols) const;

  [[nodiscard]] FieldVector operator*(std::span<const Fp> x) const;
  [[nodiscard]] FieldMatrix operator*(const FieldMatrix& rhs) const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp> entries_;
};

/// Solves A x = b for square A by Gaussian elimination. Throws SingularMatrix if rank(A) < n.
FieldVector solve(const FieldMatrix& a, std::span<const Fp> b);

/// Inverse of a square matrix. Throws SingularMatrix.
FieldMatrix inverse(const FieldMatrix& a);

/// Row rank over GF(p).
std::size_t rank(const FieldMatrix& a);

/// (j-1) x j Cauchy matrix C(i, m) = 1 / (x_i - y_m) with x_i = i + 1 and
/// y_m = j + m. Every square submatrix of a Cauchy matrix is nonsingular, so
/// deleting any one column leaves an invertible (j-1) x (j-1) matrix.
FieldMatrix cauchy_combining_matrix(int j);

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, additive Weyl step plus
/// a variant of the MurmurHash3 finalizer. Same seed, same stream, everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform element of GF(p): top 31 bits of a draw, rejecting p itself.
  Fp uniform();
  /// Uniform element of GF(p) \ {0}: as uniform(), also rejecting 0.
  Fp uniform_nonzero();

  /// Seed for an independent child stream, e.g. one per purpose or per sweep cell.
  [[nodiscard]] static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::uint64_t state_;
};

std::string to_string(const FieldMatrix& m);

}  // namespace synergy
