#pragma once

#include <vector>

#include "hermlock/hermitian.hpp"

namespace hermlock {

bool is_unitary(const HermitianSpace& s, const Mat& g);

/// Matrix g with g*' G g = G, tied to its space.
class UnitaryElement {
 public:
  /// Throws NotUnitaryInput unless g*' G g = G.
  UnitaryElement(HermitianSpace space, Mat g);
  static UnitaryElement identity(const HermitianSpace& space);

  const HermitianSpace& space() const { return space_; }
  const Mat& matrix() const { return g_; }
  const Ring& ring() const { return space_.ring(); }
  std::size_t dim() const { return space_.dim(); }

  UnitaryElement operator*(const UnitaryElement& other) const;
  UnitaryElement inverse() const;
  Mat apply(const Mat& v) const { return g_ * v; }

  friend bool operator==(const UnitaryElement& a, const UnitaryElement& b) {
    return a.space_ == b.space_ && a.g_ == b.g_;
  }

 private:
  HermitianSpace space_;
  Mat g_;
};

/// g in U with g v = w, for primitive v, w of equal length.
UnitaryElement transitivity_witness(const HermitianSpace& s, const Mat& v, const Mat& w);

/// Reduction modulo r^k.
HermitianSpace reduce(const HermitianSpace& s, int k);
UnitaryElement reduce(const UnitaryElement& g, int k);

/// g in U(s) with reduce(g, k) = gbar, where gbar is unitary for s reduced
/// to the ring of gbar. Throws NotUnitaryInput otherwise.
UnitaryElement lift(const HermitianSpace& s, const Mat& gbar);

struct Correction {
  Mat w;
  int rounds = 0;
};

/// w in r^k V with h(v_1 + w, v_i + w) = h(u_1, u_i) for all i. The columns of
/// u_basis and v_list hold u_i and v_i.
Correction correction_step(const HermitianSpace& s, const Mat& u_basis, const Mat& v_list, int k);

/// |r^k|^{m(m-1)/2} |k|^m with k the trace-zero part of r^k.
BigInt kernel_order(const Ring& ring, std::size_t m, int k);
/// Kernel of U -> U(A/r^k); requires 2k >= e.
std::vector<UnitaryElement> kernel_enumerate(const HermitianSpace& s, int k,
                                             std::uint64_t budget = 1'000'000);

struct QuadraticSolution {
  Elem a;
  int iterations = 0;
};

/// a with r a* a - (a + a*) = t, for r in m and t in R.
QuadraticSolution solve_quadratic(const Elem& r, const Elem& t);

/// Gram matrix [[r,1,0],[1,0,0],[0,0,diag(d)]].
Mat completion_gram(const Elem& r, const std::vector<Elem>& d);

struct Completion {
  UnitaryElement g;
  Mat y;
  Elem a;
  Mat x;
  int quadratic_iterations = 0;
};

/// Element [[1,a,C],[0,1-ra,-rC],[0,X,Y]] of the stabilizer of e_1, for a space
/// in completion normal form and a 1 x (m-2) row C.
Completion stabilizer_completion(const HermitianSpace& s, const Mat& c);

}  // namespace hermlock
