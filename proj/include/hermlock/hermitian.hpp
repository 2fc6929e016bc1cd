#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hermlock/linalg.hpp"

namespace hermlock {

enum class Kind { I, II };

std::string_view kind_name(Kind kind);
/// Accepts "I"/"II" (also "1"/"2").
Kind parse_kind(std::string_view text);

/// Non-degenerate hermitian space given by its Gram matrix G = G*'.
class HermitianSpace {
 public:
  /// Throws DimensionMismatch, NotHermitian or Degenerate.
  explicit HermitianSpace(Mat gram);

  const Ring& ring() const { return gram_.ring(); }
  std::size_t dim() const { return gram_.rows(); }
  const Mat& gram() const { return gram_; }

  friend bool operator==(const HermitianSpace& a, const HermitianSpace& b) { return a.gram_ == b.gram_; }

 private:
  Mat gram_;
};

/// Standard Gram matrices: diag(1,-1,...,1,-1) / (...,1,-eps) for m even,
/// diag(1,-1,...,1,-1,-1) / (...,-1,-eps) for m odd.
Mat standard_gram(const Ring& ring, std::size_t m, Kind kind);
inline HermitianSpace standard_space(const Ring& ring, std::size_t m, Kind kind) {
  return HermitianSpace(standard_gram(ring, m, kind));
}

/// h(u, v) = u*' G v.
Elem eval_form(const HermitianSpace& s, const Mat& u, const Mat& v);
inline Elem length(const HermitianSpace& s, const Mat& v) { return eval_form(s, v, v); }
/// Some coordinate is a unit.
bool is_primitive(const Mat& v);

/// Primitive u with h(u,u) a unit, from the family e_i, e_i + e_j lambda.
Mat find_unit_vector(const HermitianSpace& s);

struct Orthogonalization {
  Mat basis;                      // P with P*' G P = diag(lengths)
  std::vector<Elem> lengths;      // units of R
  Mat std_basis;                  // Q with Q*' G Q = diag(std_lengths)
  std::vector<Elem> std_lengths;  // (1, ..., 1, delta), delta in {1, eps}
};

Orthogonalization orthogonalize(const HermitianSpace& s);

Kind classify_kind(const HermitianSpace& s);

/// P with P*' G1 P = G2, or nullopt when the forms are not equivalent.
std::optional<Mat> equivalence_witness(const HermitianSpace& s1, const HermitianSpace& s2);

/// Whether r (in R) is the length of some primitive vector.
bool in_value_set(const HermitianSpace& s, const Elem& r);
/// Primitive v with h(v,v) = r, or nullopt when r is not a primitive length.
std::optional<Mat> represent_length(const HermitianSpace& s, const Elem& r);

bool is_isotropic(const HermitianSpace& s);

/// Columns spanning the orthogonal complement of the column span of b.
/// The Gram matrix b*' G b must be invertible.
Mat orthogonal_complement(const HermitianSpace& s, const Mat& b);

/// (x, y) with x* a x + y* b y = r for units a, b, r of R.
std::pair<Elem, Elem> represent_binary(const Elem& a, const Elem& b, const Elem& r);

}  // namespace hermlock
