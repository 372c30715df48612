#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synergy/rational.hpp"

namespace synergy {

/// n choose k; zero when k > n.
BigInt binomial(unsigned long n, unsigned long k);

/// n choose k in 64 bits. Throws std::overflow_error if the value does not fit.
std::uint64_t binomial_u64(unsigned n, unsigned k);

/// H_n = 1 + 1/2 + ... + 1/n exactly, with H_0 = 0.
Rational harmonic(unsigned long n);

/// H_n in double precision (summed smallest term first). Usable far beyond
/// the range where the exact value is practical.
double harmonic_double(unsigned long n);

/// Sum 1/i for i in (from, to], in double precision.
double harmonic_tail_double(unsigned long from, unsigned long to);

/// Logarithmic approximation error H_n - ln(n), n >= 1.
double epsilon(unsigned long n);

/// Limit of epsilon(n), the Euler-Mascheroni constant.
inline constexpr double kEpsilonInfinity = 0.57721566490153286061;

/// A j-element subset of the ground set {1..K}, elements strictly increasing.
class Subset {
 public:
  Subset() = default;
  /// Throws std::invalid_argument unless elements are strictly increasing within [1..K].
  Subset(int ground, std::vector<int> elements);

  /// The full set {1..K}.
  static Subset full(int ground);

  [[nodiscard]] int ground() const { return ground_; }
  [[nodiscard]] int size() const { return static_cast<int>(elements_.size()); }
  [[nodiscard]] bool empty() const { return elements_.empty(); }
  [[nodiscard]] std::span<const int> elements() const { return elements_; }
  [[nodiscard]] int operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] auto begin() const { return elements_.begin(); }
  [[nodiscard]] auto end() const { return elements_.end(); }

  [[nodiscard]] bool contains(int element) const;
  /// Position of `element` within the subset, or -1.
  [[nodiscard]] int position(int element) const;
  [[nodiscard]] Subset without(int element) const;
  [[nodiscard]] Subset with(int element) const;

  /// Index of this subset among all size()-subsets of [ground] in lexicographic order.
  [[nodiscard]] std::uint64_t rank() const;
  static Subset unrank(int ground, int size, std::uint64_t index);

  /// "{1,3,4}"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend std::strong_ordering operator<=>(const Subset& lhs, const Subset& rhs) {
    if (auto c = lhs.ground_ <=> rhs.ground_; c != 0) return c;
    return lhs.elements_ <=> rhs.elements_;
  }

 private:
  int ground_ = 0;
  std::vector<int> elements_;
};

/// All C(K, j) j-subsets of [K] in lexicographic order of their element lists.
std::vector<Subset> enumerate_subsets(int ground, int size);

}  // namespace synergy
