#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hermlock/error.hpp"

namespace hermlock {

using BigInt = boost::multiprecision::cpp_int;

/// The four families of finite local rings with involution.
///
///   Orthogonal  GR(p^e, f) with the identity involution.
///   Ramified    R/P^e where P = (rho), rho^2 = p, involution rho -> -rho.
///   Unramified  GR(p^e, f)[tau], tau^2 = nu a non-square unit, tau -> -tau.
///   Skew        S/(t^n), S = F_{q^2}[t; a -> a^q], sum a_i t^i -> sum (-1)^i sigma^{i+1}(a_i) t^i.
enum class Family { Orthogonal, Ramified, Unramified, Skew };

struct RingSpec {
  Family family = Family::Orthogonal;
  int p = 3;
  int f = 1;
  int e = 1;  // truncation order n for Skew

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Parses `orth:p=3,f=1,e=2`, `ram:...`, `unram:...`, `skew:p=3,f=1,n=2`.
/// Throws ParseError with the failing position and the expected token.
RingSpec parse_ring_spec(std::string_view text);
std::string to_string(const RingSpec& spec);
std::string_view family_name(Family family);

/// Cardinalities of the structural pieces of A. `radical` is the maximal
/// ideal r of A, `fixed` the fixed ring R, `fixed_radical` its maximal ideal m,
/// `trace_zero` the kernel s of the trace r -> m, `norm_one` the group N.
struct StructConstants {
  BigInt ring;
  BigInt units;
  BigInt radical;
  BigInt fixed;
  BigInt fixed_units;
  BigInt fixed_radical;
  BigInt trace_zero;
  BigInt norm_one;
  std::uint64_t q = 0;
  int e = 0;
  bool norm_surjective = false;
};

/// Closed-form structure constants. Only q (an odd prime power) and the
/// nilpotency degree enter, so this also serves abstract (q, e) queries.
StructConstants structure_constants(Family family, std::uint64_t q, int e);

enum class Subset { All, Units, Radical, Fixed, TraceZeroRadical, NormOne };

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000;

class Elem;

namespace detail {
struct RingImpl;
}

/// Handle to an immutable ring. Copies share the same underlying tables.
class Ring {
 public:
  Ring() = default;
  explicit Ring(const RingSpec& spec);

  bool valid() const { return impl_ != nullptr; }
  const RingSpec& spec() const;
  Family family() const { return spec().family; }
  int p() const { return spec().p; }
  int f() const { return spec().f; }
  int e() const { return spec().e; }
  std::uint64_t q() const;
  /// |A/r|: q for Orthogonal/Ramified, q^2 otherwise.
  std::uint64_t residue_size() const;
  const StructConstants& constants() const;
  bool commutative() const { return family() != Family::Skew; }
  bool norm_surjective() const { return constants().norm_surjective; }
  std::string name() const { return to_string(spec()); }

  std::size_t num_slots() const;
  std::span<const std::int64_t> slot_moduli() const;
  /// |A| when it fits in 64 bits.
  std::optional<std::uint64_t> size() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(std::int64_t n) const;
  /// Coefficients are reduced into canonical range; missing trailing slots are zero.
  Elem from_coeffs(std::span<const std::int64_t> coeffs) const;
  Elem from_coeffs(std::initializer_list<std::int64_t> coeffs) const;
  /// Generator of the radical: p, rho, p, t respectively.
  Elem uniformizer() const;
  /// The fixed non-square unit of R.
  Elem epsilon() const;
  /// The element d = 1/2, satisfying d + d* = 1.
  Elem half() const;

  /// Mixed-radix bijection [0, |A|) <-> A, slot 0 least significant.
  Elem element(std::uint64_t index) const;
  std::uint64_t index_of(const Elem& a) const;

  std::vector<Elem> enumerate(Subset subset,
                              std::uint64_t budget = kDefaultEnumerationBudget) const;
  /// Digit lifts of A/r, ordered by index (zero first).
  std::vector<Elem> residue_reps() const;
  /// Lifts of R/m lying in R, ordered by index.
  std::vector<Elem> fixed_residue_reps() const;

  /// A/r^k as a ring of the same family (1 <= k <= e).
  Ring quotient(int k) const;

  friend bool operator==(const Ring& a, const Ring& b);

 private:
  friend class Elem;
  std::shared_ptr<const detail::RingImpl> impl_;
};

Ring make_ring(const RingSpec& spec);

/// Element of a ring, stored as canonical slot coefficients.
class Elem {
 public:
  static constexpr std::size_t kMaxSlots = 24;
  using Coeffs = std::array<std::int64_t, kMaxSlots>;

  Elem() = default;

  const Ring& ring() const { return ring_; }
  std::span<const std::int64_t> coeffs() const { return {c_.data(), ring_.num_slots()}; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  bool in_radical() const { return !is_unit(); }
  bool is_fixed() const;
  /// Largest k with a in r^k; valuation of 0 is e.
  int valuation() const;

  Elem conj() const;

  Elem& operator+=(const Elem& b);
  Elem& operator-=(const Elem& b);
  Elem& operator*=(const Elem& b);

  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a);
  friend bool operator==(const Elem& a, const Elem& b);

  std::string to_string() const;

 private:
  friend class Ring;
  friend Elem reduce(const Elem&, const Ring&);
  friend Elem lift(const Elem&, const Ring&);
  Elem(Ring ring, const Coeffs& c) : ring_(std::move(ring)), c_(c) {}

  Ring ring_;
  Coeffs c_{};
};

std::ostream& operator<<(std::ostream& os, const Elem& a);

inline Elem conj(const Elem& a) { return a.conj(); }
inline Elem trace(const Elem& a) { return a + a.conj(); }
inline Elem norm(const Elem& a) { return a * a.conj(); }
Elem pow(const Elem& a, std::uint64_t n);
/// Two-sided inverse; throws NotAUnit for radical elements.
Elem inverse(const Elem& a);

/// Image of a in A/r^k (the quotient ring must come from a.ring().quotient(k)).
Elem reduce(const Elem& a, const Ring& quotient);
/// Coefficient-wise section A/r^k -> A.
Elem lift(const Elem& a, const Ring& ring);

/// u in 1 + m; returns the square root in 1 + m by Newton iteration from 1.
Elem sqrt_one_plus_m(const Elem& u);
/// Residue squareness for r in R*.
bool is_square_unit(const Elem& r);
/// Some a in A* with a a* = r; throws NotANorm when r is outside Q(A*).
Elem solve_norm_equation(const Elem& r);

}  // namespace hermlock
