#include "hermlock/counting.hpp"

namespace hermlock {

namespace {

BigInt ipow(std::uint64_t base, long long exp) {
  if (exp < 0) throw Error(ErrorKind::Internal, "negative exponent");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

BigInt ipow(const BigInt& base, long long exp) {
  if (exp < 0) throw Error(ErrorKind::Internal, "negative exponent");
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (b == 0 || a % b != 0) throw Error(ErrorKind::Internal, "inexact division in order formula");
  return a / b;
}

bool is_odd_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return false;
  std::uint64_t p = 3;
  while (p * p <= q && q % p != 0) p += 2;
  if (q % p != 0) p = q;
  while (q % p == 0) q /= p;
  return q == 1;
}

bool is_unit_class(LengthClass t) { return t != LengthClass::NonUnit; }

}  // namespace

RingShape RingShape::of(const RingSpec& spec) {
  bool prime = spec.p >= 3 && spec.p % 2 == 1;
  for (int d = 3; prime && d * d <= spec.p; d += 2) prime = spec.p % d != 0;
  if (!prime) throw Error(ErrorKind::InvalidSpec, "p must be an odd prime, got " + std::to_string(spec.p));
  if (spec.f < 1 || spec.e < 1) throw Error(ErrorKind::InvalidSpec, "f and e must be positive");
  const BigInt q = boost::multiprecision::pow(BigInt(spec.p), static_cast<unsigned>(spec.f));
  if (q > BigInt(1) << 62) throw Error(ErrorKind::InvalidSpec, "q = p^f is too large");
  return {spec.family, q.convert_to<std::uint64_t>(), spec.e};
}

std::string_view length_class_name(LengthClass t) {
  switch (t) {
    case LengthClass::UnitSquare: return "square";
    case LengthClass::UnitNonSquare: return "nonsquare";
    case LengthClass::NonUnit: return "nonunit";
  }
  return "?";
}

LengthClass parse_length_class(std::string_view text) {
  if (text == "square") return LengthClass::UnitSquare;
  if (text == "nonsquare") return LengthClass::UnitNonSquare;
  if (text == "nonunit") return LengthClass::NonUnit;
  throw Error(ErrorKind::ParseError, "t-class must be square, nonsquare or nonunit, got '" + std::string(text) + "'");
}

LengthClass classify_length(const Elem& t) {
  if (!t.is_fixed()) throw Error(ErrorKind::NotFixed, t.to_string() + " is not in R");
  if (!t.is_unit()) return LengthClass::NonUnit;
  return is_square_unit(t) ? LengthClass::UnitSquare : LengthClass::UnitNonSquare;
}

void validate(const GroupOrderQuery& query) {
  if (!is_odd_prime_power(query.ring.q))
    throw Error(ErrorKind::InvalidQuery, "q must be an odd prime power, got " + std::to_string(query.ring.q));
  if (query.ring.e < 1) throw Error(ErrorKind::InvalidQuery, "e must be positive");
  if (query.m < 1) throw Error(ErrorKind::InvalidQuery, "m must be positive");
}

bool minus_one_is_square(std::uint64_t q) { return q % 4 == 1; }

Kind restricted_kind(Kind h_kind, bool t_square, std::uint64_t q) {
  const bool h1 = h_kind == Kind::I;
  const bool m1 = minus_one_is_square(q);
  const bool kind_one = (h1 && m1 && t_square) ||     // (a)
                        (h1 && !m1 && !t_square) ||   // (b)
                        (!h1 && !m1 && t_square) ||   // (c)
                        (!h1 && m1 && !t_square);     // (d)
  return kind_one ? Kind::I : Kind::II;
}

Kind complement_kind(Kind h_kind, bool t_square, std::uint64_t q, std::size_t m) {
  if (m % 2 == 1) return restricted_kind(h_kind, t_square, q);
  return ((h_kind == Kind::I) == t_square) ? Kind::I : Kind::II;
}

BigInt field_orthogonal_order(std::size_t m, std::uint64_t q, Kind kind) {
  if (m == 0) return 1;
  if (m == 1) return 2;
  const std::size_t r = m / 2;
  // Ratio |O_m| / |O_{m-1}| across the complement of a vector of length 1.
  const Kind b = complement_kind(kind, true, q, m);
  const BigInt qr = ipow(q, r);
  if (m % 2 == 1) return qr * (b == Kind::I ? BigInt(qr + 1) : BigInt(qr - 1)) * field_orthogonal_order(m - 1, q, b);
  return ipow(q, r - 1) * (kind == Kind::I ? BigInt(qr - 1) : BigInt(qr + 1)) * field_orthogonal_order(m - 1, q, b);
}

BigInt field_unitary_order(std::size_t m, std::uint64_t q) {
  BigInt out = ipow(q, m * (m - 1) / 2);
  for (std::size_t i = 1; i <= m; ++i) out *= i % 2 ? BigInt(ipow(q, i) + 1) : BigInt(ipow(q, i) - 1);
  return out;
}

namespace {

BigInt residue_group_order(const GroupOrderQuery& query) {
  if (query.ring.norm_surjective()) return field_unitary_order(query.m, query.ring.q);
  return field_orthogonal_order(query.m, query.ring.q, query.kind);
}

}  // namespace

BigInt unitary_order(const GroupOrderQuery& query) {
  validate(query);
  if (query.m == 0) return 1;
  const auto c = query.ring.constants();
  const std::size_t m = query.m;
  return ipow(c.radical, m * (m - 1) / 2) * ipow(c.trace_zero, m) * residue_group_order(query);
}

BigInt unitary_order_alternate(const GroupOrderQuery& query) {
  validate(query);
  const auto c = query.ring.constants();
  const std::size_t m = query.m;
  return exact_div(ipow(c.radical, m * (m + 1) / 2) * residue_group_order(query), ipow(c.fixed_radical, m));
}

std::optional<BigInt> unitary_order_specialized(const GroupOrderQuery& query) {
  validate(query);
  const std::uint64_t q = query.ring.q;
  const long long e = query.ring.e;
  const long long m = static_cast<long long>(query.m);
  switch (query.ring.family) {
    case Family::Orthogonal:
      return ipow(q, m * (m - 1) * (e - 1) / 2) * field_orthogonal_order(query.m, q, query.kind);
    case Family::Unramified:
      return ipow(q, m * m * (e - 1)) * field_unitary_order(query.m, q);
    case Family::Ramified:
      if (e % 2 == 0) return ipow(q, (m * m * (e - 1) + m) / 2) * field_orthogonal_order(query.m, q, query.kind);
      return ipow(q, m * m * (e - 1) / 2) * field_orthogonal_order(query.m, q, query.kind);
    case Family::Skew:
      return std::nullopt;
  }
  return std::nullopt;
}

BigInt norm_one_order(const RingShape& ring) { return ring.constants().norm_one; }

BigInt m2_order(const RingShape& ring, bool isotropic) {
  const auto c = ring.constants();
  if (isotropic) return exact_div(c.units * c.ring * c.norm_one, c.fixed);
  return exact_div((c.ring * c.ring - c.radical * c.radical) * c.norm_one, c.fixed_units);
}

bool is_isotropic_shape(const RingShape& ring, std::size_t m, Kind kind) {
  if (m == 1) return false;
  if (m == 2) return ring.norm_surjective() || kind == Kind::I;
  return true;
}

namespace {

/// Whether a unit t of the given class is a length in rank 1 (Gram [-1] or [-eps]).
bool rank_one_represents(const RingShape& ring, Kind kind, LengthClass t) {
  if (ring.norm_surjective()) return true;
  const bool t_sq = t == LengthClass::UnitSquare;
  const bool m1 = minus_one_is_square(ring.q);
  return kind == Kind::I ? t_sq == m1 : t_sq != m1;
}

}  // namespace

BigInt stabilizer_order(const GroupOrderQuery& query, LengthClass t) {
  validate(query);
  const RingShape& ring = query.ring;
  const std::size_t m = query.m;
  const auto c = ring.constants();
  if (t == LengthClass::NonUnit) {
    if (!is_isotropic_shape(ring, m, query.kind))
      throw Error(ErrorKind::NoSuchVector, "no primitive vector of non-unit length");
    const BigInt sub = m == 2 ? BigInt(1) : unitary_order({ring, m - 2, query.kind});
    return exact_div(sub * ipow(c.ring, m - 1), c.fixed);
  }
  if (m == 1) {
    if (!rank_one_represents(ring, query.kind, t))
      throw Error(ErrorKind::NoSuchVector, "length class not represented in rank 1");
    return 1;
  }
  const Kind b = ring.norm_surjective() ? Kind::I
                                        : complement_kind(query.kind, t == LengthClass::UnitSquare, ring.q, m);
  return unitary_order({ring, m - 1, b});
}

BigInt primitive_count(const GroupOrderQuery& query, LengthClass s) {
  validate(query);
  const RingShape& ring = query.ring;
  const auto c = ring.constants();
  const bool iso = is_isotropic_shape(ring, query.m, query.kind);
  if (query.m == 1) {
    if (s == LengthClass::NonUnit || !rank_one_represents(ring, query.kind, s)) return 0;
    return c.norm_one;
  }
  if (query.m == 2) {
    if (s == LengthClass::NonUnit) return iso ? BigInt(c.units * c.norm_one) : BigInt(0);
    const BigInt prim = c.ring * c.ring - c.radical * c.radical;
    if (iso) return exact_div(prim - c.units * c.norm_one * c.fixed_radical, c.fixed_units);
    return exact_div(prim, c.fixed_units);
  }
  return exact_div(unitary_order(query), stabilizer_order(query, s));
}

BigInt weil_index_general(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t) {
  if (m < 2) throw Error(ErrorKind::InvalidCase, "the general formulas need m >= 2");
  const long long f = (l + 1) / 2;
  const long long L = l;
  const long long M = static_cast<long long>(m);
  const long long r = M / 2;
  if (is_unit_class(t)) {
    const BigInt qr = ipow(q, r);
    if (m % 2 == 1) {
      const Kind b = restricted_kind(kind, t == LengthClass::UnitSquare, q);
      return ipow(q, M * L - M + r - f + 1) * (b == Kind::I ? BigInt(qr + 1) : BigInt(qr - 1));
    }
    return ipow(q, M * L - M + r - f) * (kind == Kind::I ? BigInt(qr - 1) : BigInt(qr + 1));
  }
  const long long exponent = l % 2 ? M * L - M - L + f : L * M - M - L + f + 1;
  if (m % 2 == 1) return ipow(q, exponent) * (ipow(q, M - 1) - 1);
  const BigInt factor = kind == Kind::I ? BigInt((ipow(q, r) - 1) * (ipow(q, r - 1) + 1))
                                        : BigInt((ipow(q, r) + 1) * (ipow(q, r - 1) - 1));
  return ipow(q, exponent) * factor;
}

WeilDegreeResult weil_degree(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t) {
  validate({RingShape::weil(q, l), m, kind});
  WeilDegreeResult out;
  out.q = q;
  out.l = l;
  out.m = m;
  out.kind = kind;
  out.t = t;
  const long long f = (l + 1) / 2;
  const long long L = l;
  out.c = 2 * ipow(q, L - f);
  const std::string parity = std::string(l % 2 ? "l odd" : "l even") + ", " + (m % 2 ? "m odd" : "m even");

  if (m == 1) {
    const RingShape b = RingShape::weil(q, l);
    if (t == LengthClass::NonUnit || !rank_one_represents(b, kind, t))
      throw Error(ErrorKind::InvalidCase, "rank 1 has no primitive vector of this length class");
    out.index = b.constants().norm_one;
    out.case_label = "rank 1";
  } else if (m == 2) {
    const BigInt base = ipow(q, 2 * L - f - 1);
    if (is_unit_class(t)) {
      out.index = kind == Kind::II ? BigInt(base * (q + 1)) : BigInt(base * (q - 1));
      out.case_label = kind == Kind::II ? "m = 2, non-isotropic, t unit" : "m = 2, isotropic, t unit";
    } else {
      if (kind == Kind::II)
        throw Error(ErrorKind::InvalidCase, "t in m requires an isotropic plane (kind I) when m = 2");
      out.index = 2 * base * (q - 1);
      out.case_label = "m = 2, isotropic, t in m";
    }
  } else {
    out.index = weil_index_general(q, l, m, kind, t);
    if (m % 2 == 1 && is_unit_class(t)) out.b_kind = restricted_kind(kind, t == LengthClass::UnitSquare, q);
    out.case_label = (is_unit_class(t) ? "t unit, " : "t in m, ") + parity;
    if (out.b_kind) out.case_label += ", b kind " + std::string(kind_name(*out.b_kind));
    else if (m % 2 == 0) out.case_label += ", h kind " + std::string(kind_name(kind));
  }
  if (out.index % out.c != 0) throw Error(ErrorKind::Internal, "c does not divide the index");
  out.degree = out.index / out.c;
  return out;
}

BigInt weil_index_from_orders(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t) {
  const GroupOrderQuery query{RingShape::weil(q, l), m, kind};
  const auto spec = unitary_order_specialized(query);
  return exact_div(*spec, stabilizer_order(query, t));
}

bool identity_check(const RingShape& ring) {
  const auto c = ring.constants();
  return (c.ring + c.radical - c.norm_one * c.fixed_radical) * c.fixed == c.ring * c.fixed_units;
}

}  // namespace hermlock
