#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hermlock/hermitian.hpp"

using namespace hermlock;

namespace {

Ring orth(int p, int f, int e) { return Ring({Family::Orthogonal, p, f, e}); }
Ring ram(int p, int f, int e) { return Ring({Family::Ramified, p, f, e}); }
Ring unram(int p, int f, int e) { return Ring({Family::Unramified, p, f, e}); }
Ring skew(int p, int f, int n) { return Ring({Family::Skew, p, f, n}); }

Mat vec(const Ring& r, std::initializer_list<Elem> xs) { return Mat::column(std::vector<Elem>(xs)); }

/// Every vector of A^m, via mixed radix over element indices.
std::vector<Mat> all_vectors(const Ring& r, std::size_t m) {
  const auto elems = r.enumerate(Subset::All);
  std::vector<Mat> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= elems.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    Mat v(r, m, 1);
    std::size_t x = idx;
    for (std::size_t i = 0; i < m; ++i) {
      v(i, 0) = elems[x % elems.size()];
      x /= elems.size();
    }
    out.push_back(v);
  }
  return out;
}

/// Brute-force equivalence: search all invertible 2x2 P with P*' G1 P = G2.
bool brute_equivalent(const Mat& g1, const Mat& g2) {
  const Ring& r = g1.ring();
  const auto elems = r.enumerate(Subset::All);
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems)
        for (const auto& d : elems) {
          const Mat p = Mat::from_rows(r, {{a, b}, {c, d}});
          if (conj_transpose(p) * g1 * p == g2) return true;
        }
  return false;
}

std::vector<Mat> random_grams(const Ring& r, std::size_t m, int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, *r.size() - 1);
  std::vector<Mat> out;
  while (static_cast<int>(out.size()) < count) {
    Mat g(r, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      Elem x = r.element(pick(rng));
      g(i, i) = x + conj(x);
      for (std::size_t j = i + 1; j < m; ++j) {
        g(i, j) = r.element(pick(rng));
        g(j, i) = conj(g(i, j));
      }
    }
    if (residue_rank(g) == m) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST(Space, Validation) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_THROW(HermitianSpace(Mat::from_ints(z9, {{1, 3}, {0, 1}})), Error);
  try {
    HermitianSpace(Mat::from_ints(z9, {{3, 0}, {0, 1}}));
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::Degenerate);
  }
  const Ring f9 = unram(3, 1, 1);
  const Elem tau = f9.from_coeffs({0, 1});
  try {
    HermitianSpace(Mat::from_rows(f9, {{tau, f9.one()}, {f9.one(), f9.one()}}));
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotHermitian);
  }
}

TEST(EvalForm, Examples) {
  const Ring f3 = orth(3, 1, 1);
  const HermitianSpace s = standard_space(f3, 2, Kind::I);
  EXPECT_EQ(s.gram(), Mat::diag({f3.one(), -f3.one()}));
  const Mat e1 = Mat::unit_vector(f3, 2, 0), e2 = Mat::unit_vector(f3, 2, 1);
  EXPECT_EQ(eval_form(s, e1, e1), f3.one());
  EXPECT_TRUE(length(s, e1 + e2).is_zero());
  const Ring r = ram(3, 1, 2);
  const HermitianSpace sr = standard_space(r, 2, Kind::I);
  EXPECT_TRUE(length(sr, vec(r, {r.one(), r.one() + r.uniformizer()})).is_zero());
}

TEST(EvalForm, SesquilinearOnSkew) {
  const Ring s = skew(3, 1, 2);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> pick(0, *s.size() - 1);
  for (const auto& g : random_grams(s, 2, 10, rng)) {
    const HermitianSpace sp(g);
    for (int i = 0; i < 20; ++i) {
      const Mat u = vec(s, {s.element(pick(rng)), s.element(pick(rng))});
      const Mat v = vec(s, {s.element(pick(rng)), s.element(pick(rng))});
      const Elem a = s.element(pick(rng)), b = s.element(pick(rng));
      EXPECT_EQ(eval_form(sp, v, u), conj(eval_form(sp, u, v)));
      EXPECT_EQ(eval_form(sp, u * a, v * b), conj(a) * eval_form(sp, u, v) * b);
    }
  }
}

TEST(FindUnitVector, Examples) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_EQ(find_unit_vector(standard_space(z9, 2, Kind::I)), Mat::unit_vector(z9, 2, 0));
  const HermitianSpace hyp(Mat::from_ints(z9, {{0, 1}, {1, 0}}));
  const Mat u = find_unit_vector(hyp);
  EXPECT_EQ(u, vec(z9, {z9.one(), z9.one()}));
  EXPECT_EQ(length(hyp, u), z9.from_int(2));
  const HermitianSpace s3(Mat::from_ints(z9, {{3, 1}, {1, 3}}));
  EXPECT_EQ(find_unit_vector(s3), vec(z9, {z9.one(), z9.one()}));
  EXPECT_EQ(length(s3, find_unit_vector(s3)), z9.from_int(8));
}

TEST(Orthogonalize, ExactDiagonalisation) {
  std::mt19937_64 rng(10);
  for (const auto& r : {orth(3, 1, 2), ram(3, 1, 3), unram(3, 1, 2), skew(3, 1, 2), orth(5, 2, 2),
                        ram(5, 1, 4), skew(5, 1, 3)}) {
    SCOPED_TRACE(r.name());
    for (std::size_t m = 1; m <= 4; ++m) {
      for (const auto& g : random_grams(r, m, 5, rng)) {
        const HermitianSpace s(g);
        const auto o = orthogonalize(s);
        EXPECT_EQ(conj_transpose(o.basis) * g * o.basis, Mat::diag(o.lengths));
        EXPECT_EQ(conj_transpose(o.std_basis) * g * o.std_basis, Mat::diag(o.std_lengths));
        for (const auto& d : o.lengths) EXPECT_TRUE(d.is_unit() && d.is_fixed());
        for (std::size_t i = 0; i + 1 < m; ++i) EXPECT_EQ(o.std_lengths[i], r.one());
        const Elem& last = o.std_lengths.back();
        EXPECT_TRUE(last == r.one() || last == r.epsilon());
        if (r.norm_surjective()) EXPECT_EQ(last, r.one());
      }
    }
  }
}

TEST(Orthogonalize, Examples) {
  // -1 = N(a) for some a in F_9, so diag(1,-1) normalises to diag(1,1).
  const Ring f9 = unram(3, 1, 1);
  const auto o = orthogonalize(standard_space(f9, 2, Kind::I));
  EXPECT_EQ(o.std_lengths, (std::vector<Elem>{f9.one(), f9.one()}));
  const Ring z9 = orth(3, 1, 2);
  const HermitianSpace hyp(Mat::from_ints(z9, {{0, 1}, {1, 0}}));
  const auto oh = orthogonalize(hyp);
  ASSERT_EQ(oh.lengths.size(), 2u);
  EXPECT_EQ(oh.lengths[0], z9.from_int(2));
  EXPECT_TRUE(is_square_unit(oh.lengths[1] * inverse(z9.from_int(-2))));
  EXPECT_EQ(classify_kind(hyp), Kind::I);
  const auto oe = orthogonalize(HermitianSpace(Mat::diag({z9.epsilon()})));
  EXPECT_EQ(oe.lengths, (std::vector<Elem>{z9.epsilon()}));
  EXPECT_EQ(oe.std_lengths, (std::vector<Elem>{z9.epsilon()}));
}

TEST(Classify, Examples) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_EQ(classify_kind(standard_space(z9, 2, Kind::I)), Kind::I);
  EXPECT_EQ(classify_kind(HermitianSpace(Mat::diag({z9.one(), -z9.from_int(2)}))), Kind::II);
  std::mt19937_64 rng(12);
  for (const auto& g : random_grams(unram(3, 1, 2), 3, 10, rng))
    EXPECT_EQ(classify_kind(HermitianSpace(g)), Kind::I);
  for (const auto& r : {orth(3, 1, 2), ram(3, 1, 3), orth(5, 1, 1), orth(3, 2, 1)})
    for (std::size_t m = 1; m <= 5; ++m)
      for (Kind k : {Kind::I, Kind::II}) EXPECT_EQ(classify_kind(standard_space(r, m, k)), k);
}

// Oracle: discriminant det(G) compared against squares found by enumeration.
TEST(Classify, MatchesDiscriminantOracle) {
  std::mt19937_64 rng(13);
  for (const auto& r : {orth(3, 1, 2), ram(3, 1, 2), ram(3, 1, 3), orth(5, 1, 2)}) {
    SCOPED_TRACE(r.name());
    std::set<std::uint64_t> squares;
    for (const auto& x : r.enumerate(Subset::Units)) squares.insert(r.index_of(x * conj(x)));
    for (std::size_t m = 1; m <= 4; ++m) {
      const Elem sign = ((m % 2 == 0 ? m / 2 : (m + 1) / 2) % 2 == 0) ? r.one() : -r.one();
      for (const auto& g : random_grams(r, m, 8, rng)) {
        const bool kind_one = squares.count(r.index_of(det(g) * sign)) == 1;
        EXPECT_EQ(classify_kind(HermitianSpace(g)), kind_one ? Kind::I : Kind::II);
      }
    }
  }
}

TEST(Classify, CongruenceInvariant) {
  std::mt19937_64 rng(14);
  for (const auto& r : {orth(3, 1, 3), ram(3, 1, 4), skew(3, 1, 2)}) {
    std::uniform_int_distribution<std::uint64_t> pick(0, *r.size() - 1);
    for (const auto& g : random_grams(r, 3, 10, rng)) {
      Mat p(r, 3, 3);
      do {
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) p(i, j) = r.element(pick(rng));
      } while (residue_rank(p) < 3);
      EXPECT_EQ(classify_kind(HermitianSpace(g)),
                classify_kind(HermitianSpace(conj_transpose(p) * g * p)));
    }
  }
}

TEST(Equivalence, Examples) {
  const Ring z9 = orth(3, 1, 2);
  const HermitianSpace std1 = standard_space(z9, 2, Kind::I);
  const auto same = equivalence_witness(std1, std1);
  ASSERT_TRUE(same);
  EXPECT_EQ(conj_transpose(*same) * std1.gram() * *same, std1.gram());
  const HermitianSpace hyp(Mat::from_ints(z9, {{0, 1}, {1, 0}}));
  const auto p = equivalence_witness(hyp, std1);
  ASSERT_TRUE(p);
  EXPECT_EQ(conj_transpose(*p) * hyp.gram() * *p, std1.gram());
  EXPECT_FALSE(equivalence_witness(std1, HermitianSpace(Mat::diag({z9.one(), -z9.from_int(2)}))));
}

// Oracle: exhaustive congruence search over all 2x2 matrices.
TEST(Equivalence, AgreesWithBruteForce) {
  std::mt19937_64 rng(15);
  for (const auto& r : {orth(3, 1, 1), orth(3, 1, 2), ram(3, 1, 2), unram(3, 1, 1)}) {
    SCOPED_TRACE(r.name());
    const auto grams = random_grams(r, 2, 6, rng);
    for (const auto& g1 : grams)
      for (const auto& g2 : grams) {
        const HermitianSpace s1(g1), s2(g2);
        const auto w = equivalence_witness(s1, s2);
        EXPECT_EQ(w.has_value(), brute_equivalent(g1, g2));
        EXPECT_EQ(w.has_value(), classify_kind(s1) == classify_kind(s2));
        if (w) EXPECT_EQ(conj_transpose(*w) * g1 * *w, g2);
      }
  }
}

TEST(Represent, Examples) {
  const Ring z9 = orth(3, 1, 2);
  const HermitianSpace s1 = standard_space(z9, 2, Kind::I);
  const auto v0 = represent_length(s1, z9.zero());
  ASSERT_TRUE(v0);
  EXPECT_TRUE(length(s1, *v0).is_zero());
  EXPECT_TRUE(is_primitive(*v0));
  const HermitianSpace s2(Mat::diag({z9.one(), -z9.from_int(2)}));
  EXPECT_FALSE(represent_length(s2, z9.from_int(3)));
  const auto v2 = represent_length(s2, z9.from_int(2));
  ASSERT_TRUE(v2);
  EXPECT_EQ(length(s2, *v2), z9.from_int(2));
  EXPECT_TRUE(is_primitive(*v2));
}

// Oracle: the set of primitive lengths found by enumerating all vectors.
TEST(Represent, MatchesEnumeratedValueSets) {
  std::vector<HermitianSpace> spaces;
  for (const auto& r : {orth(3, 1, 1), orth(3, 1, 2), ram(3, 1, 2), ram(3, 1, 3), unram(3, 1, 1),
                        skew(3, 1, 2), orth(5, 1, 1)}) {
    for (std::size_t m = 1; m <= 2; ++m)
      for (Kind k : {Kind::I, Kind::II}) spaces.push_back(standard_space(r, m, k));
    spaces.push_back(HermitianSpace(Mat::diag({r.one()})));
    if (*r.size() <= 9) {
      std::mt19937_64 rng(16);
      for (const auto& g : random_grams(r, 2, 3, rng)) spaces.push_back(HermitianSpace(g));
    }
  }
  spaces.push_back(standard_space(orth(3, 1, 1), 3, Kind::I));
  spaces.push_back(standard_space(orth(3, 1, 1), 3, Kind::II));
  spaces.push_back(standard_space(ram(3, 1, 2), 3, Kind::II));
  for (const auto& s : spaces) {
    SCOPED_TRACE(s.gram().to_string() + " over " + s.ring().name());
    const Ring& r = s.ring();
    std::set<std::uint64_t> lambda;
    bool isotropic = false;
    for (const auto& v : all_vectors(r, s.dim())) {
      if (!is_primitive(v)) continue;
      const Elem len = length(s, v);
      lambda.insert(r.index_of(len));
      if (len.is_zero()) isotropic = true;
    }
    EXPECT_EQ(is_isotropic(s), isotropic);
    for (const auto& x : r.enumerate(Subset::Fixed)) {
      const bool expected = lambda.count(r.index_of(x)) == 1;
      EXPECT_EQ(in_value_set(s, x), expected) << x.to_string();
      const auto v = represent_length(s, x);
      EXPECT_EQ(v.has_value(), expected) << x.to_string();
      if (v) {
        EXPECT_EQ(length(s, *v), x);
        EXPECT_TRUE(is_primitive(*v));
      }
    }
  }
}

TEST(Represent, LargerRanksRandom) {
  std::mt19937_64 rng(17);
  for (const auto& r : {orth(3, 1, 4), ram(3, 1, 4), skew(3, 1, 3), unram(5, 1, 2)}) {
    for (std::size_t m = 3; m <= 5; ++m)
      for (const auto& g : random_grams(r, m, 3, rng)) {
        const HermitianSpace s(g);
        EXPECT_TRUE(is_isotropic(s));
        for (const auto& x : r.enumerate(Subset::Fixed, 100'000)) {
          const auto v = represent_length(s, x);
          ASSERT_TRUE(v);
          EXPECT_EQ(length(s, *v), x);
          EXPECT_TRUE(is_primitive(*v));
        }
      }
  }
}

TEST(Isotropic, Examples) {
  const Ring z9 = orth(3, 1, 2);
  EXPECT_TRUE(is_isotropic(standard_space(z9, 2, Kind::I)));
  EXPECT_FALSE(is_isotropic(HermitianSpace(Mat::diag({z9.one(), -z9.from_int(2)}))));
  EXPECT_TRUE(is_isotropic(standard_space(z9, 3, Kind::II)));
  EXPECT_FALSE(is_isotropic(standard_space(z9, 1, Kind::I)));
}

TEST(Complement, IsOrthogonalAndSpans) {
  std::mt19937_64 rng(18);
  for (const auto& r : {orth(3, 1, 3), skew(3, 1, 2)}) {
    for (const auto& g : random_grams(r, 4, 5, rng)) {
      const HermitianSpace s(g);
      const Mat u = find_unit_vector(s);
      const Mat z = orthogonal_complement(s, u);
      EXPECT_TRUE((conj_transpose(u) * g * z).is_zero());
      EXPECT_EQ(residue_rank(hcat(u, z)), 4u);
    }
  }
}
