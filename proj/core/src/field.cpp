#include "synergy/field.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "synergy/errors.hpp"

namespace synergy {

Fp Fp::inverse() const {
  if (is_zero()) throw SingularMatrix("inverse of zero in GF(p)");
  return pow(kModulus - 2);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Fp> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("FieldMatrix: entry count does not match rows x cols");
  }
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Fp(1);
  return m;
}

FieldMatrix FieldMatrix::without_column(std::size_t col) const {
  if (col >= cols_) throw std::out_of_range("FieldMatrix::without_column");
  FieldMatrix out(rows_, cols_ - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0, oc = 0; c < cols_; ++c) {
      if (c != col) out(r, oc++) = (*this)(r, c);
    }
  }
  return out;
}

FieldMatrix FieldMatrix::select(std::span<const std::size_t> row_ids, std::size_t ncols) const {
  if (ncols > cols_) throw std::out_of_range("FieldMatrix::select: too many columns");
  FieldMatrix out(row_ids.size(), ncols);
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    if (row_ids[i] >= rows_) throw std::out_of_range("FieldMatrix::select: row index");
    for (std::size_t c = 0; c < ncols; ++c) out(i, c) = (*this)(row_ids[i], c);
  }
  return out;
}

FieldVector FieldMatrix::operator*(std::span<const Fp> x) const {
  if (x.size() != cols_) throw std::invalid_argument("FieldMatrix * vector: dimension mismatch");
  FieldVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Fp acc;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("FieldMatrix * FieldMatrix: dimension mismatch");
  FieldMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Fp a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

namespace {

// Reduces [A | B] in place to [I | A^{-1} B]. Throws if A is singular.
void gauss_jordan(FieldMatrix& a, FieldMatrix& b) {
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) {
      throw SingularMatrix("singular " + std::to_string(n) + "x" + std::to_string(n) + " system");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(pivot, c), b(col, c));
    }
    const Fp inv = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Fp factor = a(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= factor * a(col, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= factor * b(col, c);
    }
  }
}

}  // namespace

FieldVector solve(const FieldMatrix& a, std::span<const Fp> b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix is not square");
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  FieldMatrix work = a;
  FieldMatrix rhs(b.size(), 1, FieldVector(b.begin(), b.end()));
  gauss_jordan(work, rhs);
  return FieldVector(rhs.entries().begin(), rhs.entries().end());
}

FieldMatrix inverse(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  FieldMatrix work = a;
  FieldMatrix inv = FieldMatrix::identity(a.rows());
  gauss_jordan(work, inv);
  return inv;
}

std::size_t rank(const FieldMatrix& a) {
  FieldMatrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(r, c));
    const Fp inv = m(r, col).inverse();
    for (std::size_t row = r + 1; row < m.rows(); ++row) {
      const Fp factor = m(row, col) * inv;
      if (factor.is_zero()) continue;
      for (std::size_t c = col; c < m.cols(); ++c) m(row, c) -= factor * m(r, c);
    }
    ++r;
  }
  return r;
}

FieldMatrix cauchy_combining_matrix(int j) {
  if (j < 2) throw std::invalid_argument("cauchy_combining_matrix: need j >= 2");
  const auto rows = static_cast<std::size_t>(j - 1);
  const auto cols = static_cast<std::size_t>(j);
  // x_i - y_m = (i + 1) - (j + m) ranges over -(2j - 2) .. -1, so only 2j - 2
  // distinct inverses are needed.
  std::vector<Fp> inv_neg(2 * cols);
  for (std::size_t d = 1; d < inv_neg.size(); ++d) inv_neg[d] = (-Fp(d)).inverse();
  FieldMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = inv_neg[cols + c - (i + 1)];
  }
  return m;
}

Fp SeededRng::uniform() {
  while (true) {
    const auto v = static_cast<std::uint32_t>(next_u64() >> 33);
    if (v != Fp::kModulus) return Fp(v);
  }
}

Fp SeededRng::uniform_nonzero() {
  while (true) {
    const auto v = static_cast<std::uint32_t>(next_u64() >> 33);
    if (v != 0 && v != Fp::kModulus) return Fp(v);
  }
}

std::uint64_t SeededRng::derive(std::uint64_t seed, std::uint64_t stream) {
  SeededRng mixer(seed ^ (stream * 0xd1b54a32d192ed03ull));
  mixer.next_u64();
  return mixer.next_u64();
}

std::string to_string(const FieldMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "\n[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c).value();
    os << "]";
  }
  return os.str();
}

}  // namespace synergy
