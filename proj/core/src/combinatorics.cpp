#include "synergy/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace synergy {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt result;
  if (k > n) return result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

namespace {

// Every C(n, k) with n <= 67 fits in 64 bits.
constexpr unsigned kPascalRows = 68;

struct PascalTable {
  std::uint64_t c[kPascalRows][kPascalRows] = {};
  constexpr PascalTable() {
    for (unsigned n = 0; n < kPascalRows; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
  }
};

constexpr PascalTable kPascal;

}  // namespace

std::uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n < kPascalRows) return kPascal.c[n][k];
  const BigInt value = binomial(n, k);
  if (!value.fits_ulong_p()) {
    throw std::overflow_error("binomial_u64: C(" + std::to_string(n) + "," + std::to_string(k) +
                              ") exceeds 64 bits");
  }
  return value.get_ui();
}

namespace {

// Binary splitting: sum_{i=lo}^{hi-1} 1/i = num/den, without reducing at each step.
void harmonic_range(unsigned long lo, unsigned long hi, BigInt& num, BigInt& den) {
  if (hi - lo == 1) {
    num = 1;
    den = lo;
    return;
  }
  const unsigned long mid = lo + (hi - lo) / 2;
  BigInt num_left, den_left, num_right, den_right;
  harmonic_range(lo, mid, num_left, den_left);
  harmonic_range(mid, hi, num_right, den_right);
  num = num_left * den_right + num_right * den_left;
  den = den_left * den_right;
}

}  // namespace

Rational harmonic(unsigned long n) {
  if (n == 0) return Rational(0);
  BigInt num, den;
  harmonic_range(1, n + 1, num, den);
  return Rational(num, den);
}

double harmonic_tail_double(unsigned long from, unsigned long to) {
  double sum = 0.0;
  for (unsigned long i = to; i > from; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double harmonic_double(unsigned long n) { return harmonic_tail_double(0, n); }

double epsilon(unsigned long n) {
  if (n == 0) throw std::invalid_argument("epsilon: n must be positive");
  return harmonic_double(n) - std::log(static_cast<double>(n));
}

Subset::Subset(int ground, std::vector<int> elements) : ground_(ground), elements_(std::move(elements)) {
  if (ground < 0) throw std::invalid_argument("Subset: negative ground set size");
  int previous = 0;
  for (int e : elements_) {
    if (e <= previous || e > ground) {
      throw std::invalid_argument("Subset: elements must be strictly increasing within [1.." +
                                  std::to_string(ground) + "]");
    }
    previous = e;
  }
}

Subset Subset::full(int ground) {
  std::vector<int> all(static_cast<std::size_t>(ground));
  for (int i = 0; i < ground; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return Subset(ground, std::move(all));
}

bool Subset::contains(int element) const { return position(element) >= 0; }

int Subset::position(int element) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == element) return static_cast<int>(i);
    if (elements_[i] > element) break;
  }
  return -1;
}

Subset Subset::without(int element) const {
  std::vector<int> out;
  out.reserve(elements_.size());
  for (int e : elements_) {
    if (e != element) out.push_back(e);
  }
  return Subset(ground_, std::move(out));
}

Subset Subset::with(int element) const {
  if (contains(element)) return *this;
  std::vector<int> out;
  out.reserve(elements_.size() + 1);
  bool placed = false;
  for (int e : elements_) {
    if (!placed && element < e) {
      out.push_back(element);
      placed = true;
    }
    out.push_back(e);
  }
  if (!placed) out.push_back(element);
  return Subset(ground_, std::move(out));
}

std::uint64_t Subset::rank() const {
  // Count the subsets whose element list is lexicographically smaller.
  const int j = size();
  std::uint64_t r = 0;
  int previous = 0;
  for (int i = 0; i < j; ++i) {
    for (int v = previous + 1; v < elements_[static_cast<std::size_t>(i)]; ++v) {
      r += binomial_u64(static_cast<unsigned>(ground_ - v), static_cast<unsigned>(j - i - 1));
    }
    previous = elements_[static_cast<std::size_t>(i)];
  }
  return r;
}

Subset Subset::unrank(int ground, int size, std::uint64_t index) {
  if (size < 0 || size > ground) throw std::invalid_argument("Subset::unrank: size out of range");
  if (index >= binomial_u64(static_cast<unsigned>(ground), static_cast<unsigned>(size))) {
    throw std::out_of_range("Subset::unrank: index out of range");
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size));
  int v = 1;
  for (int i = 0; i < size; ++i) {
    for (;; ++v) {
      const std::uint64_t block =
          binomial_u64(static_cast<unsigned>(ground - v), static_cast<unsigned>(size - i - 1));
      if (index < block) break;
      index -= block;
    }
    out.push_back(v++);
  }
  return Subset(ground, std::move(out));
}

std::string Subset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(elements_[i]);
  }
  return s + "}";
}

std::vector<Subset> enumerate_subsets(int ground, int size) {
  if (size < 0 || size > ground) throw std::invalid_argument("enumerate_subsets: need 0 <= j <= K");
  std::vector<Subset> out;
  out.reserve(binomial_u64(static_cast<unsigned>(ground), static_cast<unsigned>(size)));
  std::vector<int> current(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) current[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(ground, current);
    // Advance to the next combination in lexicographic order.
    int i = size - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == ground - size + i + 1) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int m = i + 1; m < size; ++m) {
      current[static_cast<std::size_t>(m)] = current[static_cast<std::size_t>(m - 1)] + 1;
    }
  }
  return out;
}

}  // namespace synergy
