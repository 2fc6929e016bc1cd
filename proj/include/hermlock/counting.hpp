#pragma once

#include <optional>
#include <string>

#include "hermlock/hermitian.hpp"
#include "hermlock/ring.hpp"

namespace hermlock {

enum class LengthClass { UnitSquare, UnitNonSquare, NonUnit };

std::string_view length_class_name(LengthClass t);
/// Accepts "square", "nonsquare", "nonunit".
LengthClass parse_length_class(std::string_view text);
/// Class of an element of R.
LengthClass classify_length(const Elem& t);

/// Abstract ring data: only the family, q and the nilpotency degree enter the formulas.
struct RingShape {
  Family family = Family::Orthogonal;
  std::uint64_t q = 3;
  int e = 1;

  static RingShape of(const Ring& ring) { return {ring.family(), ring.q(), ring.e()}; }
  /// Shape of a ring spec without building the ring; throws InvalidSpec.
  static RingShape of(const RingSpec& spec);
  /// B = R/P^l for the ramified extension, the ring of the Weil degree formulas.
  static RingShape weil(std::uint64_t q, int l) { return {Family::Ramified, q, l}; }
  StructConstants constants() const { return structure_constants(family, q, e); }
  bool norm_surjective() const { return family == Family::Unramified || family == Family::Skew; }
};

struct GroupOrderQuery {
  RingShape ring;
  std::size_t m = 1;
  Kind kind = Kind::I;
};

/// Throws InvalidQuery unless q is an odd prime power and m, e >= 1.
void validate(const GroupOrderQuery& query);

bool minus_one_is_square(std::uint64_t q);

/// Kind of the complement b of a vector of unit length t in a space of odd
/// rank and kind h_kind over a ring with residue field F_q.
Kind restricted_kind(Kind h_kind, bool t_square, std::uint64_t q);
/// Same for any rank m: for even m, b is of kind I iff (h_kind is I) == t_square.
Kind complement_kind(Kind h_kind, bool t_square, std::uint64_t q, std::size_t m);

BigInt field_orthogonal_order(std::size_t m, std::uint64_t q, Kind kind);
BigInt field_unitary_order(std::size_t m, std::uint64_t q);

/// |U_m(A)| through |r|^{m(m-1)/2} |s|^m |U_m(A/r)|.
BigInt unitary_order(const GroupOrderQuery& query);
/// Same order through the family-specific closed forms; nullopt for Skew.
std::optional<BigInt> unitary_order_specialized(const GroupOrderQuery& query);
/// |r|^{m(m+1)/2} |U_m(A/r)| / |m|^m.
BigInt unitary_order_alternate(const GroupOrderQuery& query);

BigInt norm_one_order(const RingShape& ring);
/// |U_2(A)| for the isotropic or the non-isotropic plane.
BigInt m2_order(const RingShape& ring, bool isotropic);
bool is_isotropic_shape(const RingShape& ring, std::size_t m, Kind kind);

/// Number of primitive vectors of a given length class (per length value).
BigInt primitive_count(const GroupOrderQuery& query, LengthClass s);
/// Order of the stabilizer of a primitive vector of length class t.
/// Throws NoSuchVector when no primitive vector has such a length.
BigInt stabilizer_order(const GroupOrderQuery& query, LengthClass t);

struct WeilDegreeResult {
  std::uint64_t q = 0;
  int l = 0;
  std::size_t m = 0;
  Kind kind = Kind::I;
  LengthClass t = LengthClass::UnitSquare;
  BigInt index;
  BigInt c;
  BigInt degree;
  std::optional<Kind> b_kind;
  std::string case_label;
};

/// [U_m(B) : S_u] and the degree index / 2q^{l-f} from the closed forms.
WeilDegreeResult weil_degree(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t);
/// The index from the general-m formulas alone (m >= 2), without the m = 2
/// special case. A zero value means the case has no primitive vector.
BigInt weil_index_general(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t);
/// Same index computed as |U_m(B)| / |S_u| from the order formulas.
BigInt weil_index_from_orders(std::uint64_t q, int l, std::size_t m, Kind kind, LengthClass t);

/// (|A| + |r| - |N||m|) / |R*| = |A| / |R|.
bool identity_check(const RingShape& ring);

}  // namespace hermlock
