#include "hermlock/linalg.hpp"

#include <ostream>
#include <sstream>

namespace hermlock {

namespace {

void require_same_ring(const Mat& a, const Mat& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "matrices over different rings");
}

void require_square(const Mat& a, const char* what) {
  if (!a.square())
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a square matrix, got " +
                                                  std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

}  // namespace

Mat::Mat(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

Mat Mat::identity(const Ring& ring, std::size_t n) {
  Mat m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Mat Mat::diag(const std::vector<Elem>& d) {
  if (d.empty()) throw Error(ErrorKind::DimensionMismatch, "empty diagonal");
  Mat m(d.front().ring(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(const std::vector<Elem>& v) {
  if (v.empty()) throw Error(ErrorKind::DimensionMismatch, "empty vector");
  Mat m(v.front().ring(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Mat Mat::from_rows(const Ring& ring, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Mat m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) {
      if (!(rows[i][j].ring() == ring)) throw Error(ErrorKind::RingMismatch, "matrix entry ring");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Mat Mat::from_ints(const Ring& ring, const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<Elem>> e;
  for (const auto& r : rows) {
    e.emplace_back();
    for (auto x : r) e.back().push_back(ring.from_int(x));
  }
  return from_rows(ring, e);
}

Mat Mat::unit_vector(const Ring& ring, std::size_t n, std::size_t i) {
  Mat m(ring, n, 1);
  m(i, 0) = ring.one();
  return m;
}

Mat Mat::col(std::size_t j) const { return block(0, j, rows_, 1); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimensionMismatch, "block out of range");
  Mat m(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw Error(ErrorKind::DimensionMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Mat::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!((*this)(i, j) == (i == j ? ring_.one() : ring_.zero()))) return false;
  return true;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Mat& a) { return os << a.to_string(); }

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "sum shapes");
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "difference shapes");
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_ring(a, b);
  if (a.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " and " +
                                                  std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Mat c(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Mat operator*(const Mat& a, const Elem& s) {
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * s;
  return c;
}

Mat operator*(const Elem& s, const Mat& a) {
  Mat c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.ring(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Mat conj_transpose(const Mat& a) {
  Mat t(a.ring(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj(a(i, j));
  return t;
}

Mat hcat(const Mat& a, const Mat& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hcat row counts differ");
  Mat c(a.ring(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

Mat invert(const Mat& a) {
  require_square(a, "invert");
  const std::size_t n = a.rows();
  const Ring& ring = a.ring();
  Mat m = a;
  Mat inv = Mat::identity(ring, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (m(r, c).is_unit()) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorKind::NotInvertible, "residue matrix is singular");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    // Row operations are left multiplications, so the result is a left inverse;
    // over a local ring (even a non-commutative one) it is then two-sided.
    const Elem s = inverse(m(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = s * m(c, j);
      inv(c, j) = s * inv(c, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      const Elem factor = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= factor * m(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t residue_rank(const Mat& a) {
  // Rank of a mod r: eliminate with unit pivots, ignoring radical entries.
  Mat m = a;
  std::size_t rank = 0;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t piv = m.rows();
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!used[r] && m(r, c).is_unit()) {
        piv = r;
        break;
      }
    if (piv == m.rows()) continue;
    used[piv] = true;
    ++rank;
    const Elem s = inverse(m(piv, c));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == piv || m(r, c).is_zero()) continue;
      const Elem factor = m(r, c) * s;
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= factor * m(piv, j);
    }
  }
  return rank;
}

namespace {

Elem laplace_det(const Mat& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Elem acc = a.ring().zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    Mat minor(a.ring(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Elem term = a(0, j) * laplace_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

Elem det(const Mat& a) {
  require_square(a, "det");
  const Ring& ring = a.ring();
  if (!ring.commutative())
    throw Error(ErrorKind::NonCommutativeRing, "determinant over " + ring.name());
  const std::size_t n = a.rows();
  Mat m = a;
  Elem acc = ring.one();
  std::size_t c = 0;
  for (; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (m(r, c).is_unit()) {
        piv = r;
        break;
      }
    if (piv == n) break;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      acc = -acc;
    }
    acc = acc * m(c, c);
    const Elem s = inverse(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const Elem factor = m(r, c) * s;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  if (c == n) return acc;
  // Remaining block has a radical column; fall back to cofactor expansion.
  return acc * laplace_det(m.block(c, c, n - c, n - c));
}

Mat reduce(const Mat& a, const Ring& quotient) {
  Mat r(quotient, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = reduce(a(i, j), quotient);
  return r;
}

Mat lift(const Mat& a, const Ring& ring) {
  Mat r(ring, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = lift(a(i, j), ring);
  return r;
}

}  // namespace hermlock
