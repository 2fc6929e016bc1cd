#include "hermlock/group.hpp"

namespace hermlock {

bool is_unitary(const HermitianSpace& s, const Mat& g) {
  if (!g.square() || g.rows() != s.dim())
    throw Error(ErrorKind::DimensionMismatch, "matrix does not act on a space of rank " + std::to_string(s.dim()));
  if (!(g.ring() == s.ring())) throw Error(ErrorKind::RingMismatch, "matrix and space over different rings");
  return conj_transpose(g) * s.gram() * g == s.gram();
}

UnitaryElement::UnitaryElement(HermitianSpace space, Mat g) : space_(std::move(space)), g_(std::move(g)) {
  if (!is_unitary(space_, g_)) throw Error(ErrorKind::NotUnitaryInput, "g*' G g differs from G");
}

UnitaryElement UnitaryElement::identity(const HermitianSpace& space) {
  return UnitaryElement(space, Mat::identity(space.ring(), space.dim()));
}

UnitaryElement UnitaryElement::operator*(const UnitaryElement& other) const {
  if (!(space_ == other.space_)) throw Error(ErrorKind::RingMismatch, "elements of different unitary groups");
  return UnitaryElement(space_, g_ * other.g_);
}

UnitaryElement UnitaryElement::inverse() const {
  // g^{-1} = G^{-1} g*' G
  return UnitaryElement(space_, invert(space_.gram()) * conj_transpose(g_) * space_.gram());
}

namespace {

Mat gram_of(const HermitianSpace& s, const Mat& b) { return conj_transpose(b) * s.gram() * b; }

/// Vector u with h(v, u) = 1.
Mat dual_vector(const HermitianSpace& s, const Mat& v) {
  const Mat ell = conj_transpose(v) * s.gram();
  for (std::size_t j = 0; j < s.dim(); ++j)
    if (ell(0, j).is_unit()) return Mat::unit_vector(s.ring(), s.dim(), j) * inverse(ell(0, j));
  throw Error(ErrorKind::NotPrimitive, "vector is not primitive");
}

/// Basis [v, z] with Gram [[r, 1], [1, 0]], for primitive v of radical length r.
Mat hyperbolic_pair(const HermitianSpace& s, const Mat& v) {
  const Ring& ring = s.ring();
  const Mat u = dual_vector(s, v);
  const Mat vu = hcat(v, u);
  const HermitianSpace plane(gram_of(s, vu));
  const HermitianSpace hyp(Mat::from_rows(ring, {{ring.zero(), ring.one()}, {ring.one(), ring.zero()}}));
  const auto t = equivalence_witness(plane, hyp);
  if (!t) throw Error(ErrorKind::Internal, "plane through a vector of radical length is not hyperbolic");
  const Mat z12 = vu * *t;  // isotropic pair with h(z1, z2) = 1
  const Mat coords = invert(*t);
  const Elem& a1 = coords(0, 0);
  const Elem& a2 = coords(1, 0);
  // v = z1 a1 + z2 a2, so h(v, z2) = a1* and h(v, z1) = a2*.
  const Mat z = a1.is_unit() ? z12.col(1) * inverse(conj(a1)) : z12.col(0) * inverse(conj(a2));
  return hcat(v, z);
}

/// Extends a basis head (columns spanning a non-degenerate subspace) by an
/// orthogonal complement whose Gram matrix equals target.
Mat extend_with_gram(const HermitianSpace& s, const Mat& head, const Mat* target) {
  if (head.cols() == s.dim()) return head;
  Mat z = orthogonal_complement(s, head);
  if (target) {
    const auto t = equivalence_witness(HermitianSpace(gram_of(s, z)), HermitianSpace(*target));
    if (!t) throw Error(ErrorKind::Internal, "complements are not equivalent");
    z = z * *t;
  }
  return hcat(head, z);
}

}  // namespace

UnitaryElement transitivity_witness(const HermitianSpace& s, const Mat& v, const Mat& w) {
  if (!is_primitive(v) || !is_primitive(w)) throw Error(ErrorKind::NotPrimitive, "input vectors must be primitive");
  const Elem r = length(s, v);
  if (!(r == length(s, w))) throw Error(ErrorKind::LengthMismatch, "h(v,v) differs from h(w,w)");
  Mat bv, bw;
  if (r.is_unit()) {
    bv = extend_with_gram(s, v, nullptr);
    const Mat target = gram_of(s, bv).block(1, 1, s.dim() - 1, s.dim() - 1);
    bw = extend_with_gram(s, w, s.dim() > 1 ? &target : nullptr);
  } else {
    bv = extend_with_gram(s, hyperbolic_pair(s, v), nullptr);
    const Mat target = gram_of(s, bv).block(2, 2, s.dim() - 2, s.dim() - 2);
    bw = extend_with_gram(s, hyperbolic_pair(s, w), s.dim() > 2 ? &target : nullptr);
  }
  return UnitaryElement(s, bw * invert(bv));
}

HermitianSpace reduce(const HermitianSpace& s, int k) {
  return HermitianSpace(reduce(s.gram(), s.ring().quotient(k)));
}

UnitaryElement reduce(const UnitaryElement& g, int k) {
  const Ring quotient = g.ring().quotient(k);
  return UnitaryElement(HermitianSpace(reduce(g.space().gram(), quotient)), reduce(g.matrix(), quotient));
}

Correction correction_step(const HermitianSpace& s, const Mat& u_basis, const Mat& v_list, int k) {
  const Ring& ring = s.ring();
  const std::size_t m = s.dim();
  if (u_basis.rows() != m || u_basis.cols() != m || v_list.rows() != m || v_list.cols() != m)
    throw Error(ErrorKind::DimensionMismatch, "correction_step expects m x m bases");
  const Mat gu = gram_of(s, u_basis);
  Mat v = v_list;
  const Mat diff = gram_of(s, v) - gu;
  for (const auto& x : diff.entries())
    if (x.is_unit()) throw Error(ErrorKind::PreconditionViolated, "Gram matrices differ modulo r");
  Correction out{Mat(ring, m, 1), 0};
  for (int round = 0; round <= 64; ++round) {
    const Mat gv = gram_of(s, v);
    std::vector<Elem> a(m);
    bool done = true;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = gu(0, i) - gv(0, i);
      if (!a[i].is_zero()) done = false;
      if (round == 0 && a[i].valuation() < k)
        throw Error(ErrorKind::PreconditionViolated, "first row differs outside r^" + std::to_string(k));
    }
    if (done) return out;
    // Row b with h(w, v_1) = a_1/2 and h(w, v_i) = a_i - a_1/2.
    Mat b(ring, 1, m);
    const Elem half_a1 = a[0] * ring.half();
    b(0, 0) = half_a1;
    for (std::size_t i = 1; i < m; ++i) b(0, i) = a[i] - half_a1;
    Mat gvm;
    try {
      gvm = invert(s.gram() * v);
    } catch (const Error&) {
      throw Error(ErrorKind::PreconditionViolated, "v_1, ..., v_m is not a basis");
    }
    const Mat w = conj_transpose(b * gvm);
    for (std::size_t j = 0; j < m; ++j) v.set_block(0, j, v.col(j) + w);
    out.w = out.w + w;
    out.rounds = round + 1;
  }
  throw Error(ErrorKind::PreconditionViolated, "correction did not converge");
}

UnitaryElement lift(const HermitianSpace& s, const Mat& gbar) {
  const Ring& ring = s.ring();
  const Ring& qring = gbar.ring();
  const RingSpec& qs = qring.spec();
  if (qs.family != ring.family() || qs.p != ring.p() || qs.f != ring.f() || qs.e > ring.e())
    throw Error(ErrorKind::RingMismatch, qring.name() + " is not a quotient of " + ring.name());
  const int k = qs.e;
  const HermitianSpace sbar(reduce(s.gram(), qring));
  if (!is_unitary(sbar, gbar)) throw Error(ErrorKind::NotUnitaryInput, "input is not unitary for the reduced form");
  if (k == ring.e()) return UnitaryElement(s, lift(gbar, ring));
  const std::size_t m = s.dim();

  if (m == 1) {
    // z z* = 1 + s with s in r^k; divide by the square root of 1 + s.
    const Elem z = lift(gbar(0, 0), ring);
    const Elem c = inverse(sqrt_one_plus_m(conj(z) * z));
    return UnitaryElement(s, Mat::diag({z * c}));
  }

  const auto o = orthogonalize(s);
  const Mat& p = o.basis;
  Mat v = lift(gbar * reduce(p, qring), ring);
  const Correction corr = correction_step(s, p, v, k);
  for (std::size_t j = 0; j < m; ++j) v.set_block(0, j, v.col(j) + corr.w);

  const UnitaryElement kk = transitivity_witness(s, p.col(0), v.col(0));
  const Mat kinv = kk.inverse().matrix();
  // Coordinates of k^{-1} v_i (i >= 2) in the orthogonal basis u_2, ..., u_m.
  Mat m0(ring, m - 1, m - 1);
  for (std::size_t i = 1; i < m; ++i) {
    const Mat y = kinv * v.col(i);
    for (std::size_t j = 1; j < m; ++j)
      m0(j - 1, i - 1) = inverse(o.lengths[j]) * eval_form(s, p.col(j), y);
  }
  const HermitianSpace s0(Mat::diag(std::vector<Elem>(o.lengths.begin() + 1, o.lengths.end())));
  const UnitaryElement g1 = lift(s0, reduce(m0, qring));
  const Mat p0 = p.block(0, 1, m, m - 1);
  const Mat image = hcat(kk.matrix() * p.col(0), kk.matrix() * p0 * g1.matrix());
  return UnitaryElement(s, image * invert(p));
}

BigInt kernel_order(const Ring& ring, std::size_t m, int k) {
  if (k < 1 || k > ring.e()) throw Error(ErrorKind::InvalidSpec, "ideal power out of range");
  const auto& c = ring.constants();
  // |r^k| = |A| / |A/r^k|; the trace-zero part of r^k has |r^k| / |m^(k)| elements,
  // with m^(k) = r^k intersected with R.
  const StructConstants ck = structure_constants(ring.family(), ring.q(), k);
  const BigInt ideal = c.ring / ck.ring;
  const BigInt ideal_fixed = c.fixed / ck.fixed;
  const BigInt trace_zero = ideal / ideal_fixed;
  return boost::multiprecision::pow(ideal, static_cast<unsigned>(m * (m - 1) / 2)) *
         boost::multiprecision::pow(trace_zero, static_cast<unsigned>(m));
}

std::vector<UnitaryElement> kernel_enumerate(const HermitianSpace& s, int k, std::uint64_t budget) {
  const Ring& ring = s.ring();
  if (k < 1 || k > ring.e()) throw Error(ErrorKind::InvalidSpec, "ideal power out of range");
  if (2 * k < ring.e())
    throw Error(ErrorKind::IdealNotSquareZero, "r^" + std::to_string(k) + " does not square to zero");
  const std::size_t m = s.dim();
  if (kernel_order(ring, m, k) > budget)
    throw Error(ErrorKind::BudgetExceeded, "kernel larger than " + std::to_string(budget));
  std::vector<Elem> ideal, skew_part;
  for (const auto& a : ring.enumerate(Subset::All, budget)) {
    if (a.valuation() < k) continue;
    ideal.push_back(a);
    if (trace(a).is_zero()) skew_part.push_back(a);
  }
  const auto o = orthogonalize(s);
  const Mat& p = o.basis;
  const Mat pinv = invert(p);
  const auto& d = o.lengths;

  // Free parameters: M_ij (i < j) in the ideal, M_ii trace-zero.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<const std::vector<Elem>*> ranges;
  for (std::size_t i = 0; i < m; ++i) {
    slots.emplace_back(i, i);
    ranges.push_back(&skew_part);
    for (std::size_t j = i + 1; j < m; ++j) {
      slots.emplace_back(i, j);
      ranges.push_back(&ideal);
    }
  }
  std::vector<std::size_t> idx(slots.size(), 0);
  std::vector<UnitaryElement> out;
  while (true) {
    Mat mm(ring, m, m);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const auto [i, j] = slots[t];
      const Elem& x = (*ranges[t])[idx[t]];
      mm(i, j) = x;
      // M_ji = -D_j^{-1} M_ij* D_i
      if (i != j) mm(j, i) = -(inverse(d[j]) * conj(x) * d[i]);
    }
    out.emplace_back(s, p * (Mat::identity(ring, m) + mm) * pinv);
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == ranges[t]->size()) idx[t++] = 0;
    if (t == idx.size()) break;
  }
  return out;
}

QuadraticSolution solve_quadratic(const Elem& r, const Elem& t) {
  if (!r.is_fixed() || r.is_unit()) throw Error(ErrorKind::RNotInRadical, r.to_string() + " is not in m");
  if (!t.is_fixed()) throw Error(ErrorKind::NotFixed, t.to_string() + " is not in R");
  const Ring& ring = r.ring();
  auto f = [&](const Elem& a) { return r * conj(a) * a - (a + conj(a)) - t; };
  QuadraticSolution out{-(t * ring.half()), 0};
  for (int i = 0; i <= ring.e() + 1; ++i) {
    const Elem fa = f(out.a);
    if (fa.is_zero()) return out;
    out.a = out.a + fa * ring.half();
    ++out.iterations;
  }
  throw Error(ErrorKind::Internal, "quadratic iteration did not terminate");
}

Mat completion_gram(const Elem& r, const std::vector<Elem>& d) {
  const Ring& ring = r.ring();
  Mat b(ring, d.size() + 2, d.size() + 2);
  b(0, 0) = r;
  b(0, 1) = ring.one();
  b(1, 0) = ring.one();
  for (std::size_t i = 0; i < d.size(); ++i) b(i + 2, i + 2) = d[i];
  return b;
}

Completion stabilizer_completion(const HermitianSpace& s, const Mat& c) {
  const Ring& ring = s.ring();
  const std::size_t m = s.dim();
  if (m < 3) throw Error(ErrorKind::BadNormalForm, "completion needs rank at least 3");
  const Mat& b = s.gram();
  const Elem r = b(0, 0);
  if (r.is_unit()) throw Error(ErrorKind::BadNormalForm, "corner entry must lie in m");
  const std::size_t n = m - 2;
  std::vector<Elem> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(b(i + 2, i + 2));
  if (!(b == completion_gram(r, d))) throw Error(ErrorKind::BadNormalForm, "Gram matrix is not [[r,1,0],[1,0,0],[0,0,D]]");
  if (c.rows() != 1 || c.cols() != n) throw Error(ErrorKind::DimensionMismatch, "C must be 1 x (m-2)");

  const Mat dm = Mat::diag(d);
  const Mat cstar = conj_transpose(c);
  const Mat e = dm + cstar * c * r;  // D + r C*'C (r central)

  // Upper triangular Y with Y*' D Y = E, column by column.
  Mat y(ring, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Elem acc = e(i, j);
      for (std::size_t k = 0; k < i; ++k) acc -= conj(y(k, i)) * d[k] * y(k, j);
      y(i, j) = inverse(conj(y(i, i)) * d[i]) * acc;
    }
    Elem acc = e(j, j);
    for (std::size_t k = 0; k < j; ++k) acc -= conj(y(k, j)) * d[k] * y(k, j);
    y(j, j) = sqrt_one_plus_m(inverse(d[j]) * acc);
  }

  const Elem kk = (c * invert(e) * cstar)(0, 0);
  const Elem t = kk * inverse(ring.one() - r * kk);
  const QuadraticSolution q = solve_quadratic(r, t);
  const Elem& a = q.a;
  const Mat x = invert(conj_transpose(y) * dm) * cstar * (a * r - ring.one());

  Mat g(ring, m, m);
  g(0, 0) = ring.one();
  g(0, 1) = a;
  g.set_block(0, 2, c);
  g(1, 1) = ring.one() - r * a;
  g.set_block(1, 2, -r * c);
  g.set_block(2, 1, x);
  g.set_block(2, 2, y);
  return Completion{UnitaryElement(s, g), y, a, x, q.iterations};
}

}  // namespace hermlock
