#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hermlock/ring.hpp"

using namespace hermlock;

namespace {

Ring orth(int p, int f, int e) { return Ring({Family::Orthogonal, p, f, e}); }
Ring ram(int p, int f, int e) { return Ring({Family::Ramified, p, f, e}); }
Ring unram(int p, int f, int e) { return Ring({Family::Unramified, p, f, e}); }
Ring skew(int p, int f, int n) { return Ring({Family::Skew, p, f, n}); }

std::vector<Ring> small_rings() {
  return {orth(3, 1, 1), orth(3, 1, 2), orth(3, 2, 1), orth(5, 1, 2), ram(3, 1, 1), ram(3, 1, 2),
          ram(3, 1, 3), ram(3, 1, 4), ram(5, 1, 2), unram(3, 1, 1), unram(3, 1, 2), skew(3, 1, 1),
          skew(3, 1, 2)};
}

}  // namespace

TEST(RingSpec, ParsesAllFamilies) {
  EXPECT_EQ(parse_ring_spec("orth:p=3,f=1,e=2"), (RingSpec{Family::Orthogonal, 3, 1, 2}));
  EXPECT_EQ(parse_ring_spec("ram:e=4,p=5,f=2"), (RingSpec{Family::Ramified, 5, 2, 4}));
  EXPECT_EQ(parse_ring_spec("unram:p=7,f=1,e=1"), (RingSpec{Family::Unramified, 7, 1, 1}));
  EXPECT_EQ(parse_ring_spec("skew:p=3,f=1,n=2"), (RingSpec{Family::Skew, 3, 1, 2}));
  for (const auto& r : small_rings()) EXPECT_EQ(parse_ring_spec(r.name()), r.spec());
}

TEST(RingSpec, ParseErrorsReportPosition) {
  for (const char* bad : {"foo:p=3,f=1,e=1", "orth p=3", "orth:p=3,f=1", "orth:p=3,f=1,n=2",
                          "skew:p=3,f=1,e=2", "orth:p=x,f=1,e=1", "orth:p=3,p=3,f=1,e=1",
                          "orth:p=3;f=1,e=1"}) {
    try {
      parse_ring_spec(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::ParseError);
      EXPECT_NE(std::string(err.what()).find("position"), std::string::npos);
      EXPECT_NE(std::string(err.what()).find("expected"), std::string::npos);
    }
  }
}

TEST(MakeRing, InvalidSpecs) {
  for (RingSpec s : {RingSpec{Family::Orthogonal, 2, 1, 1}, RingSpec{Family::Orthogonal, 9, 1, 1},
                     RingSpec{Family::Ramified, 3, 1, 0}, RingSpec{Family::Skew, 3, 0, 1}}) {
    try {
      Ring r(s);
      ADD_FAILURE();
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::InvalidSpec);
    }
  }
}

TEST(MakeRing, F3HasIdentityInvolution) {
  const Ring r = orth(3, 1, 1);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(r.constants().radical, 1);
  for (const auto& a : r.enumerate(Subset::All)) EXPECT_EQ(conj(a), a);
}

// Oracle: count by filtering the full enumeration, independently of the closed forms.
TEST(MakeRing, StructureConstantsMatchEnumeration) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.name());
    const auto all = r.enumerate(Subset::All);
    std::uint64_t units = 0, radical = 0, fixed = 0, fixed_units = 0, trace_zero = 0, norm_one = 0;
    std::set<std::vector<std::int64_t>> norms;
    for (const auto& a : all) {
      const bool unit = a.is_unit();
      units += unit;
      radical += !unit;
      if (a + a == a.ring().zero() && !a.is_zero()) ADD_FAILURE();
      if (conj(a) == a) {
        ++fixed;
        fixed_units += unit;
      }
      if (!unit && (a + conj(a)).is_zero()) ++trace_zero;
      if (unit && a * conj(a) == r.one()) ++norm_one;
      if (unit) {
        const auto n = a * conj(a);
        norms.insert({n.coeffs().begin(), n.coeffs().end()});
      }
    }
    const auto& c = r.constants();
    EXPECT_EQ(c.ring, all.size());
    EXPECT_EQ(c.units, units);
    EXPECT_EQ(c.radical, radical);
    EXPECT_EQ(c.fixed, fixed);
    EXPECT_EQ(c.fixed_units, fixed_units);
    EXPECT_EQ(c.fixed_radical, fixed - fixed_units);
    EXPECT_EQ(c.trace_zero, trace_zero);
    EXPECT_EQ(c.norm_one, norm_one);
    // Norm surjectivity onto R* decided by the image of the norm map.
    EXPECT_EQ(c.norm_surjective, norms.size() == fixed_units);
    EXPECT_EQ(r.enumerate(Subset::Units).size(), units);
    EXPECT_EQ(r.enumerate(Subset::Radical).size(), radical);
    EXPECT_EQ(r.enumerate(Subset::Fixed).size(), fixed);
    EXPECT_EQ(r.enumerate(Subset::TraceZeroRadical).size(), trace_zero);
    EXPECT_EQ(r.enumerate(Subset::NormOne).size(), norm_one);
  }
}

TEST(MakeRing, SpecExamples) {
  const Ring a = ram(3, 1, 2);
  EXPECT_EQ(a.size(), 9u);
  EXPECT_EQ(a.constants().radical, 3);
  EXPECT_EQ(a.constants().fixed, 3);
  EXPECT_EQ(a.constants().fixed_radical, 1);
  const Ring s = skew(3, 1, 2);
  EXPECT_EQ(s.size(), 81u);
  EXPECT_EQ(s.constants().radical, 9);
  EXPECT_EQ(s.constants().fixed, 3);
  EXPECT_FALSE(s.commutative());
  bool found = false;
  const auto all = s.enumerate(Subset::All);
  for (const auto& x : all)
    for (const auto& y : all)
      if (!(x * y == y * x)) found = true;
  EXPECT_TRUE(found);
}

TEST(MakeRing, ClosedFormCardinalities) {
  for (int q : {3, 5, 9, 25}) {
    for (int e = 1; e <= 5; ++e) {
      const auto ram_c = structure_constants(Family::Ramified, q, e);
      EXPECT_EQ(ram_c.radical, boost::multiprecision::pow(BigInt(q), e - 1));
      EXPECT_EQ(ram_c.fixed_radical, boost::multiprecision::pow(BigInt(q), (e - 1) / 2));
      const auto un = structure_constants(Family::Unramified, q, e);
      EXPECT_EQ(un.radical, boost::multiprecision::pow(BigInt(q), 2 * (e - 1)));
      EXPECT_EQ(un.fixed_radical, boost::multiprecision::pow(BigInt(q), e - 1));
      for (Family fam : {Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew}) {
        const auto c = structure_constants(fam, q, e);
        EXPECT_EQ(c.trace_zero * c.fixed_radical, c.radical);
        EXPECT_EQ(c.norm_one * c.fixed_units, c.units * (c.norm_surjective ? 1 : 2));
      }
    }
  }
}

TEST(Arith, RamifiedProduct) {
  const Ring r = ram(3, 1, 4);
  const Elem rho = r.uniformizer();
  const Elem x = (r.one() + rho) * (r.one() - rho);
  EXPECT_EQ(x, r.from_int(7));
  EXPECT_EQ(rho * rho, r.from_int(3));
  EXPECT_EQ(conj(rho), -rho);
}

// Oracle: F_9 = F_3[x]/(x^2 + 1) computed with plain integer pairs.
TEST(Arith, SkewCommutationRule) {
  const Ring s = skew(3, 1, 2);
  EXPECT_EQ(s.q(), 3u);
  const Elem t = s.uniformizer();
  auto f9_cube = [](std::int64_t a, std::int64_t b) {
    // (a + b x)^3 = a + b x^3 = a - b x in characteristic 3 with x^2 = -1
    return std::pair{a, (3 - b) % 3};
  };
  for (std::int64_t a = 0; a < 3; ++a) {
    for (std::int64_t b = 0; b < 3; ++b) {
      const Elem x = s.from_coeffs({a, b});
      const auto [ca, cb] = f9_cube(a, b);
      EXPECT_EQ(t * x, s.from_coeffs({ca, cb}) * t);
      EXPECT_EQ(pow(x, 3), s.from_coeffs({ca, cb}));
    }
  }
}

TEST(Arith, InvertAndValuation) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.name());
    EXPECT_EQ(inverse(r.one()), r.one());
    for (const auto& a : r.enumerate(Subset::All)) {
      if (a.is_unit()) {
        const Elem b = inverse(a);
        EXPECT_EQ(a * b, r.one());
        EXPECT_EQ(b * a, r.one());
        EXPECT_EQ(a.valuation(), 0);
      } else {
        EXPECT_THROW(inverse(a), Error);
        EXPECT_GE(a.valuation(), 1);
      }
      // valuation oracle: a in r^k iff a = pi^k * b for some b (left multiples).
      int v = 0;
      Elem pk = r.one();
      for (int k = 1; k <= r.e(); ++k) {
        pk = pk * r.uniformizer();
        bool hit = false;
        for (const auto& b : r.enumerate(Subset::All))
          if (pk * b == a) hit = true;
        if (hit) v = k;
        else break;
      }
      if (!a.is_zero() || r.uniformizer().is_zero()) {
        if (a.is_zero()) v = r.e();
        EXPECT_EQ(a.valuation(), v) << a.to_string();
      } else {
        EXPECT_EQ(a.valuation(), r.e());
      }
    }
  }
}

TEST(Arith, RingMismatch) {
  try {
    (void)(orth(3, 1, 1).one() + orth(3, 1, 2).one());
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::RingMismatch);
  }
}

TEST(Arith, NotAUnit) {
  try {
    inverse(orth(3, 1, 2).from_int(3));
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotAUnit);
  }
}

TEST(Properties, AntiAutomorphismCentralityLocality) {
  for (const auto& r : small_rings()) {
    if (*r.size() > 81) continue;
    SCOPED_TRACE(r.name());
    const auto all = r.enumerate(Subset::All);
    const auto fixed = r.enumerate(Subset::Fixed);
    for (const auto& a : all) {
      EXPECT_EQ(conj(conj(a)), a);
      EXPECT_NE(a.is_unit(), a.in_radical());
      EXPECT_TRUE(conj(a + a * a).is_fixed() == (a + a * a).is_fixed());
      EXPECT_TRUE(trace(a).is_fixed());
      EXPECT_TRUE(norm(a).is_fixed());
      for (const auto& b : all) {
        EXPECT_EQ(conj(a * b), conj(b) * conj(a));
        EXPECT_EQ(conj(a + b), conj(a) + conj(b));
      }
      for (const auto& z : fixed) EXPECT_EQ(z * a, a * z);
    }
  }
}

TEST(Properties, RandomAssociativityLargeRings) {
  std::mt19937_64 rng(7);
  for (const auto& r : {ram(5, 2, 4), unram(7, 2, 3), skew(5, 2, 4), orth(3, 3, 5)}) {
    SCOPED_TRACE(r.name());
    std::uniform_int_distribution<std::uint64_t> pick(0, *r.size() - 1);
    for (int i = 0; i < 300; ++i) {
      const Elem a = r.element(pick(rng)), b = r.element(pick(rng)), c = r.element(pick(rng));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(conj(a * b), conj(b) * conj(a));
      EXPECT_EQ(r.index_of(a), r.index_of(r.element(r.index_of(a))));
      if (a.is_unit()) EXPECT_EQ(a * inverse(a), r.one());
    }
  }
}

TEST(TraceNorm, Examples) {
  const Ring r = ram(3, 1, 2);
  EXPECT_EQ(norm(r.one() + r.uniformizer()), r.one());
  const Ring z = orth(3, 1, 2);
  for (const auto& a : z.enumerate(Subset::All)) {
    EXPECT_EQ(trace(a), a + a);
    EXPECT_EQ(norm(a), a * a);
  }
  const Ring f9 = unram(3, 1, 1);
  EXPECT_EQ(f9.epsilon(), f9.from_int(2));
  const Elem tau = f9.from_coeffs({0, 1});
  EXPECT_EQ(tau * tau, f9.from_int(2));
  EXPECT_EQ(norm(tau), f9.one());
}

TEST(Sqrt, Examples) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_EQ(sqrt_one_plus_m(z9.one()), z9.one());
  EXPECT_EQ(sqrt_one_plus_m(z9.from_int(4)), z9.from_int(7));
  const Ring z27 = orth(3, 1, 3);
  std::int64_t expected = -1;
  for (std::int64_t x = 1; x < 27; x += 3)
    if (x * x % 27 == 10) expected = x;
  EXPECT_EQ(sqrt_one_plus_m(z27.from_int(10)), z27.from_int(expected));
  try {
    sqrt_one_plus_m(z9.from_int(2));
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotInOnePlusM);
  }
}

TEST(Sqrt, InvertsSquaringOnOnePlusM) {
  for (const auto& r : {orth(3, 1, 4), ram(3, 1, 4), unram(3, 1, 3), skew(3, 1, 4), ram(5, 2, 3)}) {
    SCOPED_TRACE(r.name());
    for (const auto& m : r.enumerate(Subset::Fixed, 1'000'000)) {
      if (m.is_unit()) continue;
      const Elem x = r.one() + m;
      EXPECT_EQ(sqrt_one_plus_m(x * x), x);
    }
  }
}

TEST(Squares, Examples) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_TRUE(is_square_unit(z9.one()));
  EXPECT_FALSE(is_square_unit(z9.from_int(2)));
  EXPECT_TRUE(is_square_unit(z9.from_int(7)));
  EXPECT_EQ(z9.epsilon(), z9.from_int(2));
  EXPECT_THROW(is_square_unit(z9.from_int(3)), Error);
}

// Oracle: squares of R* computed by squaring every fixed unit.
TEST(Squares, MatchesSquaringTable) {
  for (const auto& r : small_rings()) {
    SCOPED_TRACE(r.name());
    std::set<std::uint64_t> squares;
    const auto fixed = r.enumerate(Subset::Fixed);
    for (const auto& x : fixed)
      if (x.is_unit()) squares.insert(r.index_of(x * x));
    for (const auto& x : fixed)
      if (x.is_unit()) EXPECT_EQ(is_square_unit(x), squares.count(r.index_of(x)) == 1);
    EXPECT_FALSE(is_square_unit(r.epsilon()));
    EXPECT_EQ(r.half() + conj(r.half()), r.one());
  }
}

TEST(NormEquation, Examples) {
  const Ring f9 = unram(3, 1, 1);
  EXPECT_EQ(solve_norm_equation(f9.one()), f9.one());
  const Elem a = solve_norm_equation(f9.from_int(2));
  EXPECT_EQ(norm(a), f9.from_int(2));
  const Ring r = ram(3, 1, 2);
  try {
    solve_norm_equation(r.from_int(2));
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotANorm);
  }
}

TEST(NormEquation, MatchesNormImage) {
  for (const auto& r : {orth(3, 1, 3), ram(3, 1, 3), ram(3, 1, 4), unram(3, 1, 2), skew(3, 1, 3),
                        orth(5, 1, 2), ram(5, 1, 3)}) {
    SCOPED_TRACE(r.name());
    std::set<std::uint64_t> image;
    for (const auto& a : r.enumerate(Subset::Units, 100'000)) image.insert(r.index_of(norm(a)));
    for (const auto& x : r.enumerate(Subset::Fixed, 100'000)) {
      if (!x.is_unit()) continue;
      if (image.count(r.index_of(x))) {
        const Elem a = solve_norm_equation(x);
        EXPECT_EQ(a * conj(a), x);
      } else {
        EXPECT_THROW(solve_norm_equation(x), Error);
      }
    }
  }
}

TEST(Enumerate, Examples) {
  const Ring z3 = orth(3, 1, 1);
  const auto units = z3.enumerate(Subset::Units);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0], z3.from_int(1));
  EXPECT_EQ(units[1], z3.from_int(2));
  const Ring r = ram(3, 1, 2);
  const Elem rho = r.uniformizer();
  const auto n1 = r.enumerate(Subset::NormOne);
  std::set<std::uint64_t> expected;
  for (int s : {1, -1})
    for (int t : {-1, 0, 1}) expected.insert(r.index_of(r.from_int(s) + r.from_int(t) * rho));
  std::set<std::uint64_t> got;
  for (const auto& x : n1) got.insert(r.index_of(x));
  EXPECT_EQ(got, expected);
  const auto tz = r.enumerate(Subset::TraceZeroRadical);
  ASSERT_EQ(tz.size(), 3u);
  EXPECT_EQ(tz[0], r.zero());
  EXPECT_EQ(tz[1], rho);
  EXPECT_EQ(tz[2], rho + rho);
}

TEST(Enumerate, BudgetExceeded) {
  try {
    orth(3, 1, 9).enumerate(Subset::All);
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Quotient, ReduceLiftHomomorphism) {
  std::mt19937_64 rng(11);
  for (const auto& r : {orth(3, 1, 3), ram(3, 1, 4), unram(5, 1, 3), skew(3, 1, 3)}) {
    for (int k = 1; k <= r.e(); ++k) {
      const Ring b = r.quotient(k);
      EXPECT_EQ(b.constants().ring * boost::multiprecision::pow(BigInt(r.residue_size()), r.e() - k),
                r.constants().ring);
      std::uniform_int_distribution<std::uint64_t> pick(0, *r.size() - 1);
      for (int i = 0; i < 100; ++i) {
        const Elem x = r.element(pick(rng)), y = r.element(pick(rng));
        EXPECT_EQ(reduce(x * y, b), reduce(x, b) * reduce(y, b));
        EXPECT_EQ(reduce(x + y, b), reduce(x, b) + reduce(y, b));
        EXPECT_EQ(reduce(conj(x), b), conj(reduce(x, b)));
        EXPECT_EQ(reduce(lift(reduce(x, b), r), b), reduce(x, b));
        // kernel of reduction is r^k
        EXPECT_EQ(reduce(x, b).is_zero(), x.valuation() >= k);
      }
    }
  }
}
