#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hermlock/ring.hpp"

namespace hermlock {

/// Dense row-major matrix over a Ring.
class Mat {
 public:
  Mat() = default;
  Mat(Ring ring, std::size_t rows, std::size_t cols);

  static Mat identity(const Ring& ring, std::size_t n);
  static Mat diag(const std::vector<Elem>& d);
  /// Column vector.
  static Mat column(const std::vector<Elem>& v);
  static Mat from_rows(const Ring& ring, const std::vector<std::vector<Elem>>& rows);
  static Mat from_ints(const Ring& ring, const std::vector<std::vector<std::int64_t>>& rows);
  /// i-th standard basis column of length n.
  static Mat unit_vector(const Ring& ring, std::size_t n, std::size_t i);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Entry i of a column vector.
  const Elem& operator[](std::size_t i) const { return data_[i]; }

  Mat col(std::size_t j) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  const std::vector<Elem>& entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const Mat& a, const Mat& b);

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

std::ostream& operator<<(std::ostream& os, const Mat& a);

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
/// Right scalar multiplication X a.
Mat operator*(const Mat& a, const Elem& s);
/// Left scalar multiplication a X.
Mat operator*(const Elem& s, const Mat& a);
inline Mat matmul(const Mat& a, const Mat& b) { return a * b; }

Mat transpose(const Mat& a);
/// X*' : entry-wise involution followed by transpose.
Mat conj_transpose(const Mat& a);
/// Horizontal concatenation [a | b].
Mat hcat(const Mat& a, const Mat& b);

/// Exact inverse by unit-pivot Gauss-Jordan elimination. Throws NotInvertible
/// when the residue matrix is singular.
Mat invert(const Mat& a);
/// Rank of the residue matrix over A/r.
std::size_t residue_rank(const Mat& a);
/// Determinant for commutative rings; NonCommutativeRing for Skew.
Elem det(const Mat& a);

Mat reduce(const Mat& a, const Ring& quotient);
Mat lift(const Mat& a, const Ring& ring);

}  // namespace hermlock
