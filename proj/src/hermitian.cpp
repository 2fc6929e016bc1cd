#include "hermlock/hermitian.hpp"

namespace hermlock {

std::string_view kind_name(Kind kind) { return kind == Kind::I ? "I" : "II"; }

Kind parse_kind(std::string_view text) {
  if (text == "I" || text == "1") return Kind::I;
  if (text == "II" || text == "2") return Kind::II;
  throw Error(ErrorKind::ParseError, "kind must be I or II, got '" + std::string(text) + "'");
}

HermitianSpace::HermitianSpace(Mat gram) : gram_(std::move(gram)) {
  if (!gram_.square() || gram_.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "Gram matrix must be square and non-empty");
  if (!(conj_transpose(gram_) == gram_)) throw Error(ErrorKind::NotHermitian, "G differs from G*'");
  if (residue_rank(gram_) != gram_.rows()) throw Error(ErrorKind::Degenerate, "G is not invertible");
}

Mat standard_gram(const Ring& ring, std::size_t m, Kind kind) {
  if (m == 0) throw Error(ErrorKind::DimensionMismatch, "rank must be positive");
  std::vector<Elem> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(i % 2 == 0 ? ring.one() : -ring.one());
  if (m % 2 == 1) d.back() = -ring.one();
  if (kind == Kind::II) d.back() = -ring.epsilon();
  return Mat::diag(d);
}

Elem eval_form(const HermitianSpace& s, const Mat& u, const Mat& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != s.dim() || v.rows() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "vectors must be columns of length " + std::to_string(s.dim()));
  return (conj_transpose(u) * s.gram() * v)(0, 0);
}

bool is_primitive(const Mat& v) {
  for (const auto& x : v.entries())
    if (x.is_unit()) return true;
  return false;
}

Mat find_unit_vector(const HermitianSpace& s) {
  const std::size_t m = s.dim();
  const Ring& ring = s.ring();
  const Mat& g = s.gram();
  for (std::size_t i = 0; i < m; ++i)
    if (g(i, i).is_unit()) return Mat::unit_vector(ring, m, i);
  const auto lambdas = ring.residue_reps();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (const auto& lam : lambdas) {
        if (lam.is_zero()) continue;
        const Elem len = g(i, i) + g(i, j) * lam + conj(lam) * g(j, i) + conj(lam) * g(j, j) * lam;
        if (len.is_unit()) {
          Mat v = Mat::unit_vector(ring, m, i);
          v(j, 0) = lam;
          return v;
        }
      }
    }
  throw Error(ErrorKind::Degenerate, "no vector of unit length found");
}

Mat orthogonal_complement(const HermitianSpace& s, const Mat& b) {
  const std::size_t m = s.dim();
  const std::size_t k = b.cols();
  const Mat bstar_g = conj_transpose(b) * s.gram();
  const Mat h_inv = invert(bstar_g * b);
  // Complete b to a basis with standard vectors, then project away from span(b).
  Mat basis = b;
  Mat out(s.ring(), m, m - k);
  std::size_t filled = 0;
  for (std::size_t j = 0; j < m && filled < m - k; ++j) {
    const Mat ej = Mat::unit_vector(s.ring(), m, j);
    const Mat trial = hcat(basis, ej);
    if (residue_rank(trial) != trial.cols()) continue;
    basis = trial;
    out.set_block(0, filled++, ej - b * (h_inv * (bstar_g * ej)));
  }
  if (filled != m - k) throw Error(ErrorKind::DimensionMismatch, "subspace is not a direct summand");
  return out;
}

std::pair<Elem, Elem> represent_binary(const Elem& a, const Elem& b, const Elem& r) {
  const Ring& ring = r.ring();
  const auto reps = ring.residue_reps();
  for (const auto& x : reps) {
    const Elem ax = conj(x) * a * x;
    for (const auto& y : reps) {
      const Elem val = ax + conj(y) * b * y;
      if (!val.is_unit() || (val - r).is_unit()) continue;
      const Elem c = sqrt_one_plus_m(r * inverse(val));
      return {x * c, y * c};
    }
  }
  throw Error(ErrorKind::Internal, "binary form does not represent " + r.to_string());
}

namespace {

Mat diag_gram(const HermitianSpace& s, const Mat& p) { return conj_transpose(p) * s.gram() * p; }

/// Rescales the last vector of an orthogonal basis so its length is 1 or eps.
void rescale_last(Mat& basis, std::vector<Elem>& lengths) {
  const std::size_t m = lengths.size();
  const Ring& ring = basis.ring();
  const Elem& delta = lengths.back();
  Elem target = ring.one();
  Elem b;
  try {
    b = solve_norm_equation(inverse(delta));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotANorm) throw;
    target = ring.epsilon();
    b = solve_norm_equation(target * inverse(delta));
  }
  // h(u b*, u b*) = b delta b* = delta b b* = target
  const Elem a = conj(b);
  for (std::size_t i = 0; i < basis.rows(); ++i) basis(i, m - 1) = basis(i, m - 1) * a;
  lengths.back() = target;
}

}  // namespace

Orthogonalization orthogonalize(const HermitianSpace& s) {
  const std::size_t m = s.dim();
  const Ring& ring = s.ring();
  Orthogonalization out;
  out.basis = Mat(ring, m, m);

  // Gram-Schmidt on a shrinking subspace spanned by the columns of sub.
  Mat sub = Mat::identity(ring, m);
  for (std::size_t i = 0; i < m; ++i) {
    const HermitianSpace local(diag_gram(s, sub));
    const Mat c = find_unit_vector(local);
    const Mat u = sub * c;
    out.basis.set_block(0, i, u);
    out.lengths.push_back(length(s, u));
    if (i + 1 < m) sub = sub * orthogonal_complement(local, c);
  }

  // Standard type (1, ..., 1, delta).
  Mat q = out.basis;
  std::vector<Elem> d = out.lengths;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto [x, y] = represent_binary(d[i], d[i + 1], ring.one());
    const Mat u1 = q.col(i), u2 = q.col(i + 1);
    const Mat v = u1 * x + u2 * y;
    const Mat w = x.is_unit() ? u2 - v * eval_form(s, v, u2) : u1 - v * eval_form(s, v, u1);
    q.set_block(0, i, v);
    q.set_block(0, i + 1, w);
    d[i] = ring.one();
    d[i + 1] = length(s, w);
  }
  rescale_last(q, d);
  out.std_basis = q;
  out.std_lengths = d;
  return out;
}

namespace {

/// Product of the kind-I standard entries: (-1)^{m/2} or (-1)^{(m+1)/2}.
Elem standard_product(const Ring& ring, std::size_t m) {
  const std::size_t minus = m % 2 == 0 ? m / 2 : (m + 1) / 2;
  return minus % 2 == 0 ? ring.one() : -ring.one();
}

}  // namespace

Kind classify_kind(const HermitianSpace& s) {
  if (s.ring().norm_surjective()) return Kind::I;
  const auto o = orthogonalize(s);
  Elem prod = s.ring().one();
  for (const auto& x : o.lengths) prod = prod * x;
  // Q(A*) = R*^2 here, and the standard product is +-1 (its own inverse).
  return is_square_unit(prod * standard_product(s.ring(), s.dim())) ? Kind::I : Kind::II;
}

std::optional<Mat> equivalence_witness(const HermitianSpace& s1, const HermitianSpace& s2) {
  if (!(s1.ring() == s2.ring())) throw Error(ErrorKind::RingMismatch, "spaces over different rings");
  if (s1.dim() != s2.dim()) throw Error(ErrorKind::DimensionMismatch, "spaces of different rank");
  if (s1 == s2) return Mat::identity(s1.ring(), s1.dim());
  const auto o1 = orthogonalize(s1);
  const auto o2 = orthogonalize(s2);
  if (!(o1.std_lengths == o2.std_lengths)) return std::nullopt;
  return o1.std_basis * invert(o2.std_basis);
}

bool is_isotropic(const HermitianSpace& s) {
  if (s.dim() == 1) return false;
  if (s.dim() == 2) return s.ring().norm_surjective() || classify_kind(s) == Kind::I;
  return true;
}

bool in_value_set(const HermitianSpace& s, const Elem& r) {
  if (!r.is_fixed()) return false;
  if (s.dim() == 1) {
    if (!r.is_unit()) return false;
    const Elem ratio = r * inverse(s.gram()(0, 0));
    return s.ring().norm_surjective() || is_square_unit(ratio);
  }
  return r.is_unit() || is_isotropic(s);
}

namespace {

/// Primitive isotropic vector, if any.
std::optional<Mat> isotropic_vector(const HermitianSpace& s, const Orthogonalization& o) {
  if (s.dim() < 2) return std::nullopt;
  const Mat& p = o.basis;
  const auto& d = o.lengths;
  const Elem ratio = -d[1] * inverse(d[0]);
  try {
    // z = u1 b* + u2 with b b* = -D2/D1
    const Elem b = solve_norm_equation(ratio);
    return Mat(p.col(0) * conj(b) + p.col(1));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotANorm) throw;
  }
  if (s.dim() < 3) return std::nullopt;
  const auto [x, y] = represent_binary(d[0], d[1], -d[2]);
  return Mat(p.col(0) * x + p.col(1) * y + p.col(2));
}

}  // namespace

std::optional<Mat> represent_length(const HermitianSpace& s, const Elem& r) {
  const Ring& ring = s.ring();
  if (!(r.ring() == ring)) throw Error(ErrorKind::RingMismatch, "length outside the ring of the space");
  if (!r.is_fixed()) return std::nullopt;
  const std::size_t m = s.dim();
  if (m == 1) {
    if (!in_value_set(s, r)) return std::nullopt;
    const Elem b = solve_norm_equation(r * inverse(s.gram()(0, 0)));
    return Mat::unit_vector(ring, 1, 0) * conj(b);
  }
  const auto o = orthogonalize(s);
  if (r.is_unit()) {
    const auto [x, y] = represent_binary(o.lengths[0], o.lengths[1], r);
    return Mat(o.basis.col(0) * x + o.basis.col(1) * y);
  }
  const auto z = isotropic_vector(s, o);
  if (!z) return std::nullopt;
  // w with h(z, w) = 1, then v = z s + w has length s + s* + h(w,w).
  const Mat ell = conj_transpose(*z) * s.gram();
  std::size_t j = 0;
  while (!ell(0, j).is_unit()) ++j;
  const Mat w = Mat::unit_vector(ring, m, j) * inverse(ell(0, j));
  const Elem coef = (r - length(s, w)) * ring.half();
  return Mat(*z * coef + w);
}

}  // namespace hermlock
