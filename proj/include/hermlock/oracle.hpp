#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hermlock/group.hpp"

namespace hermlock {

/// Limits for brute-force enumeration, checked before any search starts.
struct OracleBudget {
  std::uint64_t max_nodes = 100'000'000;  // constrained-search nodes
  std::uint64_t max_ring = 81;            // |A|
  std::size_t max_m = 3;

  /// Defaults overridden by HERMLOCK_BUDGET, either a bare node count or
  /// a list like `nodes=1e6,ring=27,m=2`.
  static OracleBudget from_env();
  static OracleBudget parse(std::string_view text);
};

/// Entries of g as ring indices, row-major. Equal keys iff equal matrices.
std::vector<std::uint32_t> matrix_key(const Mat& g);

/// All g with g*' G g = G, column by column: column j runs over vectors v with
/// h(v_i, v) = G_ij for i < j and h(v, v) = G_jj. Deterministic order.
/// Throws BudgetExceeded.
std::vector<UnitaryElement> enumerate_group(const HermitianSpace& s,
                                            const OracleBudget& budget = OracleBudget::from_env());

/// Closure under products and inverses, and presence of the identity.
bool is_group(const std::vector<UnitaryElement>& elements);

struct LengthFiber {
  Elem length;
  std::uint64_t count = 0;
};

/// Number of primitive vectors of each length t in R (zero counts included),
/// ordered by the index of t.
std::vector<LengthFiber> length_fibers(const HermitianSpace& s,
                                       const OracleBudget& budget = OracleBudget::from_env());

struct OrbitStabilizer {
  std::vector<Mat> orbit;
  std::vector<UnitaryElement> stabilizer;
};

OrbitStabilizer orbit_and_stabilizer(const std::vector<UnitaryElement>& group, const Mat& v);
OrbitStabilizer orbit_and_stabilizer(const HermitianSpace& s, const Mat& v,
                                     const OracleBudget& budget = OracleBudget::from_env());

/// One line of the `verify` report.
struct CheckRecord {
  std::string check;
  std::string instance;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// "small" runs the fast checks; "full" adds rank-3 group enumerations.
/// Throws InvalidQuery for other grid names.
std::vector<CheckRecord> run_verify(std::string_view grid,
                                    const OracleBudget& budget = OracleBudget::from_env());

}  // namespace hermlock
