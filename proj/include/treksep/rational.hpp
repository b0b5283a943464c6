#pragma once

// Dense matrices over arbitrary-precision rationals. Everything here is exact;
// there is no floating point anywhere in the rank and determinant paths.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treksep/error.hpp"

namespace treksep {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  /// Rows and columns picked by 0-based index, in the given order.
  RationalMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    RationalMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
      for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
    return out;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      s += '[';
      for (std::size_t c = 0; c < cols_; ++c) s += (c ? ", " : "") + (*this)(r, c).str();
      s += "]\n";
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

// Row-reduces `m` in place to echelon form; returns the rank and the sign of
// the row permutation applied.
inline std::pair<std::size_t, int> echelon(RationalMatrix& m) {
  std::size_t rank = 0;
  int sign = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(rank, k));
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(rank, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return {rank, sign};
}

}  // namespace detail

/// Rank over the rationals.
inline std::size_t exact_rank(RationalMatrix m) { return detail::echelon(m).first; }

inline Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  auto [rank, sign] = detail::echelon(m);
  if (rank < m.rows()) return 0;
  Rational d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m(pivot, k), m(c, k));
        std::swap(inv(pivot, k), inv(c, k));
      }
    Rational p = m(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) /= p;
      inv(c, k) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(r, k) -= f * m(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

}  // namespace treksep
