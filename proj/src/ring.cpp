#include "hermlock/ring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace hermlock {

namespace {

using Coeffs = Elem::Coeffs;
constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// p^k, or nullopt past `limit`.
std::optional<std::int64_t> checked_pow(std::int64_t p, int k, std::int64_t limit) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > limit / p) return std::nullopt;
    r *= p;
  }
  return r;
}

inline std::int64_t mod(std::int64_t x, std::int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

int ceil_half(int e) { return (e + 1) / 2; }

/// out = a * b in (Z/mod)[x]/(x^d + poly[d-1] x^{d-1} + ... + poly[0]).
void poly_mulmod(const std::int64_t* a, const std::int64_t* b, std::int64_t* out, int d,
                 const std::vector<std::int64_t>& poly, std::int64_t m) {
  std::array<std::int64_t, 2 * Elem::kMaxSlots> prod{};
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % m;
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    const std::int64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < d; ++i) prod[k - d + i] = mod(prod[k - d + i] - c * poly[i], m);
  }
  for (int i = 0; i < d; ++i) out[i] = prod[i];
}

/// Remainder of a by monic b over F_p; both given low-to-high with explicit leading coefficient.
std::vector<std::int64_t> poly_rem(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b,
                                   std::int64_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::int64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
    a.pop_back();
  }
  return a;
}

/// Monic polynomial of degree d whose non-leading coefficients are the base-p digits of idx.
std::vector<std::int64_t> monic_from_index(std::uint64_t idx, int d, std::int64_t p) {
  std::vector<std::int64_t> c(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<std::int64_t>(idx % p);
    idx /= p;
  }
  c[d] = 1;
  return c;
}

bool irreducible(const std::vector<std::int64_t>& g, std::int64_t p) {
  const int d = static_cast<int>(g.size()) - 1;
  for (int k = 1; 2 * k <= d; ++k) {
    const std::uint64_t count = *checked_pow(p, k, std::numeric_limits<std::int64_t>::max());
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const auto rem = poly_rem(g, monic_from_index(idx, k, p), p);
      if (std::all_of(rem.begin(), rem.end(), [](std::int64_t x) { return x == 0; })) return false;
    }
  }
  return true;
}

/// Least monic irreducible of degree d over F_p; returns the d non-leading coefficients.
std::vector<std::int64_t> least_irreducible(int d, std::int64_t p) {
  const std::uint64_t count = *checked_pow(p, d, std::numeric_limits<std::int64_t>::max());
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto g = monic_from_index(idx, d, p);
    if (irreducible(g, p)) {
      g.pop_back();
      return g;
    }
  }
  throw Error(ErrorKind::Internal, "no irreducible polynomial found");
}

int vp(std::int64_t x, std::int64_t p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

namespace detail {

struct RingImpl {
  RingSpec spec;
  std::uint64_t q = 0;
  std::uint64_t residue_size = 0;
  StructConstants constants;
  std::size_t slots = 0;
  std::vector<std::int64_t> moduli;
  std::optional<std::uint64_t> size;

  int d = 1;                      // degree of the coefficient extension (f, or 2f for Skew)
  std::vector<std::int64_t> poly;  // non-leading coefficients of the modulus polynomial
  std::int64_t big_mod = 1;       // p^e, p^ceil(e/2) (Ramified a0), or p (Skew)
  std::int64_t small_mod = 1;     // Ramified a1 modulus p^floor(e/2)
  Coeffs nu{};                    // tau^2 for Unramified, as a GR element
  std::vector<std::vector<std::int64_t>> sigma;  // Skew: column i = (x^i)^q

  Coeffs epsilon{};
  Coeffs half{};
  std::vector<Coeffs> residue;
  std::vector<Coeffs> fixed_residue;

  void gr_mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out,
              std::int64_t m) const {
    poly_mulmod(a, b, out, d, poly, m);
  }

  void apply_sigma(const std::int64_t* a, std::int64_t* out) const {
    std::array<std::int64_t, Elem::kMaxSlots> r{};
    for (int j = 0; j < d; ++j) {
      if (a[j] == 0) continue;
      for (int i = 0; i < d; ++i) r[i] = (r[i] + a[j] * sigma[j][i]) % big_mod;
    }
    std::copy_n(r.begin(), d, out);
  }

  Coeffs mul(const Coeffs& a, const Coeffs& b) const {
    Coeffs out{};
    switch (spec.family) {
      case Family::Orthogonal:
        gr_mul(a.data(), b.data(), out.data(), big_mod);
        break;
      case Family::Ramified: {
        const int f = d;
        std::array<std::int64_t, Elem::kMaxSlots> t{};
        gr_mul(a.data(), b.data(), out.data(), big_mod);
        gr_mul(a.data() + f, b.data() + f, t.data(), big_mod);
        for (int i = 0; i < f; ++i) out[i] = (out[i] + spec.p * t[i]) % big_mod;
        gr_mul(a.data(), b.data() + f, out.data() + f, big_mod);
        gr_mul(a.data() + f, b.data(), t.data(), big_mod);
        for (int i = 0; i < f; ++i) out[f + i] = (out[f + i] + t[i]) % small_mod;
        break;
      }
      case Family::Unramified: {
        const int f = d;
        std::array<std::int64_t, Elem::kMaxSlots> t{}, u{};
        gr_mul(a.data(), b.data(), out.data(), big_mod);
        gr_mul(a.data() + f, b.data() + f, t.data(), big_mod);
        gr_mul(t.data(), nu.data(), u.data(), big_mod);
        for (int i = 0; i < f; ++i) out[i] = (out[i] + u[i]) % big_mod;
        gr_mul(a.data(), b.data() + f, out.data() + f, big_mod);
        gr_mul(a.data() + f, b.data(), t.data(), big_mod);
        for (int i = 0; i < f; ++i) out[f + i] = (out[f + i] + t[i]) % big_mod;
        break;
      }
      case Family::Skew: {
        const int n = spec.e;
        std::array<std::int64_t, Elem::kMaxSlots> sb{}, t{};
        for (int i = 0; i < n; ++i) {
          const std::int64_t* ai = a.data() + i * d;
          if (std::all_of(ai, ai + d, [](std::int64_t x) { return x == 0; })) continue;
          for (int j = 0; i + j < n; ++j) {
            const std::int64_t* bj = b.data() + j * d;
            // t^i b = sigma^i(b) t^i
            if (i % 2 == 1) {
              apply_sigma(bj, sb.data());
              bj = sb.data();
            }
            gr_mul(ai, bj, t.data(), big_mod);
            std::int64_t* o = out.data() + (i + j) * d;
            for (int k = 0; k < d; ++k) o[k] = (o[k] + t[k]) % big_mod;
          }
        }
        break;
      }
    }
    return out;
  }

  Coeffs conj(const Coeffs& a) const {
    Coeffs out = a;
    switch (spec.family) {
      case Family::Orthogonal:
        break;
      case Family::Ramified:
        for (int i = 0; i < d; ++i) out[d + i] = mod(-a[d + i], small_mod);
        break;
      case Family::Unramified:
        for (int i = 0; i < d; ++i) out[d + i] = mod(-a[d + i], big_mod);
        break;
      case Family::Skew:
        for (int i = 0; i < spec.e; ++i) {
          if (i % 2 == 0) {
            apply_sigma(a.data() + i * d, out.data() + i * d);
          } else {
            for (int k = 0; k < d; ++k) out[i * d + k] = mod(-a[i * d + k], big_mod);
          }
        }
        break;
    }
    return out;
  }

  bool is_unit(const Coeffs& a) const {
    switch (spec.family) {
      case Family::Orthogonal:
      case Family::Ramified:
        return std::any_of(a.begin(), a.begin() + d, [&](std::int64_t x) { return x % spec.p != 0; });
      case Family::Unramified:
        return std::any_of(a.begin(), a.begin() + 2 * d,
                           [&](std::int64_t x) { return x % spec.p != 0; });
      case Family::Skew:
        return std::any_of(a.begin(), a.begin() + d, [](std::int64_t x) { return x != 0; });
    }
    return false;
  }

  int valuation(const Coeffs& a) const {
    const int e = spec.e;
    const int p = spec.p;
    int v = e;
    switch (spec.family) {
      case Family::Orthogonal:
      case Family::Unramified:
        for (std::size_t i = 0; i < slots; ++i) v = std::min(v, vp(a[i], p, e));
        break;
      case Family::Ramified: {
        const int c = ceil_half(e), fl = e / 2;
        for (int i = 0; i < d; ++i) {
          v = std::min(v, 2 * vp(a[i], p, c));
          v = std::min(v, 2 * vp(a[d + i], p, fl) + 1);
        }
        break;
      }
      case Family::Skew:
        for (int i = 0; i < e; ++i) {
          if (std::any_of(a.begin() + i * d, a.begin() + (i + 1) * d,
                          [](std::int64_t x) { return x != 0; })) {
            v = i;
            break;
          }
        }
        break;
    }
    return std::min(v, e);
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Spec parsing

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Orthogonal: return "orth";
    case Family::Ramified: return "ram";
    case Family::Unramified: return "unram";
    case Family::Skew: return "skew";
  }
  return "?";
}

std::string to_string(const RingSpec& spec) {
  std::ostringstream os;
  os << family_name(spec.family) << ":p=" << spec.p << ",f=" << spec.f
     << (spec.family == Family::Skew ? ",n=" : ",e=") << spec.e;
  return os.str();
}

RingSpec parse_ring_spec(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](std::string_view expected) -> Error {
    std::ostringstream os;
    os << "ring spec '" << text << "' at position " << pos << ": expected " << expected;
    return Error(ErrorKind::ParseError, os.str());
  };
  auto ident = [&]() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };

  RingSpec spec;
  const auto fam = ident();
  if (fam == "orth") spec.family = Family::Orthogonal;
  else if (fam == "ram") spec.family = Family::Ramified;
  else if (fam == "unram") spec.family = Family::Unramified;
  else if (fam == "skew") spec.family = Family::Skew;
  else {
    pos = 0;
    throw fail("one of 'orth', 'ram', 'unram', 'skew'");
  }
  if (pos >= text.size() || text[pos] != ':') throw fail("':'");
  ++pos;

  const char* third = spec.family == Family::Skew ? "n" : "e";
  std::optional<int> p, f, e;
  while (true) {
    const std::size_t key_pos = pos;
    const auto key = ident();
    std::optional<int>* slot = nullptr;
    if (key == "p") slot = &p;
    else if (key == "f") slot = &f;
    else if (key == third) slot = &e;
    else {
      pos = key_pos;
      throw fail(std::string("one of keys 'p', 'f', '") + third + "'");
    }
    if (slot->has_value()) {
      pos = key_pos;
      throw fail("a key not already given");
    }
    if (pos >= text.size() || text[pos] != '=') throw fail("'='");
    ++pos;
    const std::size_t num_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_start || pos - num_start > 9) {
      pos = num_start;
      throw fail("a decimal integer");
    }
    *slot = std::stoi(std::string(text.substr(num_start, pos - num_start)));
    if (pos == text.size()) break;
    if (text[pos] != ',') throw fail("',' or end of input");
    ++pos;
  }
  if (!p) throw fail("key 'p'");
  if (!f) throw fail("key 'f'");
  if (!e) throw fail(std::string("key '") + third + "'");
  spec.p = *p;
  spec.f = *f;
  spec.e = *e;
  return spec;
}

// ---------------------------------------------------------------------------
// Structure constants

StructConstants structure_constants(Family family, std::uint64_t q, int e) {
  if (q < 3 || q % 2 == 0 || e < 1) throw Error(ErrorKind::InvalidSpec, "need odd q >= 3 and e >= 1");
  StructConstants c;
  c.q = q;
  c.e = e;
  const BigInt Q = q;
  const bool wide = family == Family::Unramified || family == Family::Skew;
  const BigInt residue = wide ? Q * Q : Q;
  c.ring = boost::multiprecision::pow(residue, static_cast<unsigned>(e));
  c.radical = c.ring / residue;
  c.units = c.ring - c.radical;
  switch (family) {
    case Family::Orthogonal:
    case Family::Unramified:
      c.fixed = boost::multiprecision::pow(Q, static_cast<unsigned>(e));
      break;
    case Family::Ramified:
    case Family::Skew:
      c.fixed = boost::multiprecision::pow(Q, static_cast<unsigned>(ceil_half(e)));
      break;
  }
  c.fixed_radical = c.fixed / Q;
  c.fixed_units = c.fixed - c.fixed_radical;
  c.trace_zero = c.radical / c.fixed_radical;
  c.norm_surjective = wide;
  c.norm_one = c.units / c.fixed_units * (wide ? 1 : 2);
  return c;
}

// ---------------------------------------------------------------------------
// Ring

Ring make_ring(const RingSpec& spec) { return Ring(spec); }

Ring::Ring(const RingSpec& spec) {
  if (spec.p % 2 == 0 || !is_prime(spec.p))
    throw Error(ErrorKind::InvalidSpec, "p must be an odd prime, got " + std::to_string(spec.p));
  if (spec.f < 1) throw Error(ErrorKind::InvalidSpec, "f must be >= 1");
  if (spec.e < 1) throw Error(ErrorKind::InvalidSpec, "e must be >= 1");

  auto impl = std::make_shared<detail::RingImpl>();
  impl->spec = spec;
  const auto q = checked_pow(spec.p, spec.f, std::int64_t{1} << 40);
  if (!q) throw Error(ErrorKind::InvalidSpec, "q = p^f too large");
  impl->q = static_cast<std::uint64_t>(*q);
  const int f = spec.f;
  const int e = spec.e;

  auto need = [](std::optional<std::int64_t> v) {
    if (!v) throw Error(ErrorKind::InvalidSpec, "coefficient modulus exceeds 2^31");
    return *v;
  };
  switch (spec.family) {
    case Family::Orthogonal:
      impl->d = f;
      impl->big_mod = need(checked_pow(spec.p, e, kMaxModulus));
      impl->slots = f;
      impl->moduli.assign(f, impl->big_mod);
      impl->residue_size = impl->q;
      break;
    case Family::Ramified:
      impl->d = f;
      impl->big_mod = need(checked_pow(spec.p, ceil_half(e), kMaxModulus));
      impl->small_mod = need(checked_pow(spec.p, e / 2, kMaxModulus));
      impl->slots = 2 * f;
      impl->moduli.assign(f, impl->big_mod);
      impl->moduli.insert(impl->moduli.end(), f, impl->small_mod);
      impl->residue_size = impl->q;
      break;
    case Family::Unramified:
      impl->d = f;
      impl->big_mod = need(checked_pow(spec.p, e, kMaxModulus));
      impl->slots = 2 * f;
      impl->moduli.assign(2 * f, impl->big_mod);
      impl->residue_size = impl->q * impl->q;
      break;
    case Family::Skew:
      impl->d = 2 * f;
      impl->big_mod = spec.p;
      impl->slots = static_cast<std::size_t>(2 * f) * e;
      impl->moduli.assign(impl->slots, spec.p);
      impl->residue_size = impl->q * impl->q;
      break;
  }
  if (impl->slots > Elem::kMaxSlots)
    throw Error(ErrorKind::InvalidSpec, "ring needs more than " + std::to_string(Elem::kMaxSlots) +
                                            " coefficient slots");
  impl->constants = structure_constants(spec.family, impl->q, e);
  {
    std::uint64_t n = 1;
    bool fits = true;
    for (auto m : impl->moduli) {
      if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m)) {
        fits = false;
        break;
      }
      n *= static_cast<std::uint64_t>(m);
    }
    if (fits) impl->size = n;
  }

  // Monic modulus lifted coefficient-wise from the least irreducible over F_p.
  impl->poly = least_irreducible(impl->d, spec.p);

  if (spec.family == Family::Skew) {
    // sigma(x^i) = (x^i)^q computed in F_{q^2}
    const int d = impl->d;
    impl->sigma.assign(d, std::vector<std::int64_t>(d, 0));
    for (int i = 0; i < d; ++i) {
      std::array<std::int64_t, Elem::kMaxSlots> base{}, acc{}, tmp{};
      base[i] = 1;
      acc[0] = 1;
      std::uint64_t n = impl->q;
      while (n > 0) {
        if (n & 1) {
          poly_mulmod(acc.data(), base.data(), tmp.data(), d, impl->poly, spec.p);
          acc = tmp;
        }
        poly_mulmod(base.data(), base.data(), tmp.data(), d, impl->poly, spec.p);
        base = tmp;
        n >>= 1;
      }
      for (int k = 0; k < d; ++k) impl->sigma[i][k] = acc[k];
    }
  }

  // Residue digit lifts.
  {
    const std::int64_t p = spec.p;
    const int digits = (spec.family == Family::Unramified || spec.family == Family::Skew) ? 2 * f : f;
    const std::uint64_t count = impl->residue_size;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs c{};
      std::uint64_t x = idx;
      for (int i = 0; i < digits; ++i) {
        c[i] = static_cast<std::int64_t>(x % p);
        x /= p;
      }
      impl->residue.push_back(c);
    }
  }
  impl_ = impl;

  // Fixed residue lifts, epsilon and 1/2 need arithmetic on the finished handle.
  // They are stored as raw coefficients so the impl holds no reference to itself.
  for (const auto& c : impl->residue) {
    const Elem a(*this, c);
    if (a.is_fixed()) impl->fixed_residue.push_back(c);
  }
  impl->half = inverse(from_int(2)).c_;
  bool found = false;
  for (const auto& c : impl->fixed_residue) {
    const Elem a(*this, c);
    if (!a.is_zero() && !is_square_unit(a)) {
      impl->epsilon = c;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::Internal, "no non-square residue found");

  if (spec.family == Family::Unramified) {
    // nu is the lift of the least non-square residue of F_q, i.e. epsilon of GR(p^e, f).
    impl->nu = impl->epsilon;
  }
}

const RingSpec& Ring::spec() const { return impl_->spec; }
std::uint64_t Ring::q() const { return impl_->q; }
std::uint64_t Ring::residue_size() const { return impl_->residue_size; }
const StructConstants& Ring::constants() const { return impl_->constants; }
std::size_t Ring::num_slots() const { return impl_ ? impl_->slots : 0; }
std::span<const std::int64_t> Ring::slot_moduli() const { return impl_->moduli; }
std::optional<std::uint64_t> Ring::size() const { return impl_->size; }

bool operator==(const Ring& a, const Ring& b) {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.impl_->spec == b.impl_->spec;
}

Elem Ring::zero() const { return Elem(*this, Coeffs{}); }

Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(std::int64_t n) const {
  Coeffs c{};
  c[0] = mod(n, impl_->moduli[0]);
  return Elem(*this, c);
}

Elem Ring::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > impl_->slots)
    throw Error(ErrorKind::DimensionMismatch, "too many coefficients for " + name());
  Coeffs c{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = mod(coeffs[i], impl_->moduli[i]);
  return Elem(*this, c);
}

Elem Ring::from_coeffs(std::initializer_list<std::int64_t> coeffs) const {
  return from_coeffs(std::span<const std::int64_t>(coeffs.begin(), coeffs.size()));
}

Elem Ring::uniformizer() const {
  Coeffs c{};
  switch (family()) {
    case Family::Orthogonal:
    case Family::Unramified:
      c[0] = mod(p(), impl_->big_mod);
      break;
    case Family::Ramified:
      c[f()] = mod(1, impl_->small_mod);
      break;
    case Family::Skew:
      if (e() >= 2) c[impl_->d] = 1;
      break;
  }
  return Elem(*this, c);
}

Elem Ring::epsilon() const { return Elem(*this, impl_->epsilon); }
Elem Ring::half() const { return Elem(*this, impl_->half); }

Elem Ring::element(std::uint64_t index) const {
  Coeffs c{};
  for (std::size_t i = 0; i < impl_->slots; ++i) {
    const auto m = static_cast<std::uint64_t>(impl_->moduli[i]);
    c[i] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  return Elem(*this, c);
}

std::uint64_t Ring::index_of(const Elem& a) const {
  if (!(a.ring() == *this)) throw Error(ErrorKind::RingMismatch, "index_of");
  std::uint64_t index = 0;
  for (std::size_t i = impl_->slots; i-- > 0;)
    index = index * static_cast<std::uint64_t>(impl_->moduli[i]) + static_cast<std::uint64_t>(a.c_[i]);
  return index;
}

std::vector<Elem> Ring::enumerate(Subset subset, std::uint64_t budget) const {
  if (!impl_->size || *impl_->size > budget)
    throw Error(ErrorKind::BudgetExceeded,
                name() + " has more than " + std::to_string(budget) + " elements");
  std::vector<Elem> out;
  const Elem one_elem = one();
  for (std::uint64_t i = 0; i < *impl_->size; ++i) {
    Elem a = element(i);
    bool keep = true;
    switch (subset) {
      case Subset::All: break;
      case Subset::Units: keep = a.is_unit(); break;
      case Subset::Radical: keep = !a.is_unit(); break;
      case Subset::Fixed: keep = a.is_fixed(); break;
      case Subset::TraceZeroRadical: keep = !a.is_unit() && trace(a).is_zero(); break;
      case Subset::NormOne: keep = a.is_unit() && norm(a) == one_elem; break;
    }
    if (keep) out.push_back(std::move(a));
  }
  return out;
}

std::vector<Elem> Ring::residue_reps() const {
  std::vector<Elem> out;
  out.reserve(impl_->residue.size());
  for (const auto& c : impl_->residue) out.push_back(Elem(*this, c));
  return out;
}

std::vector<Elem> Ring::fixed_residue_reps() const {
  std::vector<Elem> out;
  out.reserve(impl_->fixed_residue.size());
  for (const auto& c : impl_->fixed_residue) out.push_back(Elem(*this, c));
  return out;
}

Ring Ring::quotient(int k) const {
  if (k < 1 || k > e())
    throw Error(ErrorKind::InvalidSpec, "quotient power must lie in [1, e], got " + std::to_string(k));
  if (k == e()) return *this;
  RingSpec s = spec();
  s.e = k;
  return Ring(s);
}

// ---------------------------------------------------------------------------
// Elem

namespace {
void check_same(const Elem& a, const Elem& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorKind::RingMismatch, "operands live in different rings");
}
}  // namespace

bool Elem::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + ring_.num_slots(), [](std::int64_t x) { return x == 0; });
}

bool Elem::is_one() const { return *this == ring_.one(); }

bool Elem::is_unit() const { return ring_.impl_->is_unit(c_); }

bool Elem::is_fixed() const { return ring_.impl_->conj(c_) == c_; }

int Elem::valuation() const { return ring_.impl_->valuation(c_); }

Elem Elem::conj() const { return Elem(ring_, ring_.impl_->conj(c_)); }

Elem& Elem::operator+=(const Elem& b) {
  check_same(*this, b);
  const auto& m = ring_.impl_->moduli;
  for (std::size_t i = 0; i < m.size(); ++i) c_[i] = (c_[i] + b.c_[i]) % m[i];
  return *this;
}

Elem& Elem::operator-=(const Elem& b) {
  check_same(*this, b);
  const auto& m = ring_.impl_->moduli;
  for (std::size_t i = 0; i < m.size(); ++i) c_[i] = mod(c_[i] - b.c_[i], m[i]);
  return *this;
}

Elem& Elem::operator*=(const Elem& b) {
  check_same(*this, b);
  c_ = ring_.impl_->mul(c_, b.c_);
  return *this;
}

Elem operator*(const Elem& a, const Elem& b) {
  Elem r = a;
  return r *= b;
}

Elem operator-(const Elem& a) { return a.ring().zero() - a; }

bool operator==(const Elem& a, const Elem& b) {
  if (!(a.ring_ == b.ring_)) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.ring_.num_slots(), b.c_.begin());
}

std::string Elem::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < ring_.num_slots(); ++i) os << (i ? "," : "") << c_[i];
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Elem& a) { return os << a.to_string(); }

Elem pow(const Elem& a, std::uint64_t n) {
  Elem acc = a.ring().one();
  Elem base = a;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

Elem inverse(const Elem& a) {
  if (!a.is_unit()) throw Error(ErrorKind::NotAUnit, "cannot invert radical element " + a.to_string());
  const Ring& ring = a.ring();
  // Residue inverse from Fermat, then Newton: 1 - a x' = (1 - a x)^2.
  Elem x = pow(a, ring.residue_size() - 2);
  const Elem one = ring.one();
  const Elem two = ring.from_int(2);
  for (int i = 0; i < 64; ++i) {
    const Elem ax = a * x;
    if (ax == one) return x;
    x = x * (two - ax);
  }
  throw Error(ErrorKind::Internal, "inverse did not converge");
}

Elem reduce(const Elem& a, const Ring& quotient) {
  const RingSpec& s = a.ring().spec();
  const RingSpec& t = quotient.spec();
  if (s.family != t.family || s.p != t.p || s.f != t.f || t.e > s.e)
    throw Error(ErrorKind::RingMismatch, to_string(t) + " is not a quotient of " + to_string(s));
  Elem::Coeffs c{};
  const auto mods = quotient.slot_moduli();
  for (std::size_t i = 0; i < mods.size(); ++i) c[i] = a.c_[i] % mods[i];
  return Elem(quotient, c);
}

Elem lift(const Elem& a, const Ring& ring) {
  const RingSpec& s = a.ring().spec();
  const RingSpec& t = ring.spec();
  if (s.family != t.family || s.p != t.p || s.f != t.f || s.e > t.e)
    throw Error(ErrorKind::RingMismatch, to_string(s) + " is not a quotient of " + to_string(t));
  Elem::Coeffs c{};
  for (std::size_t i = 0; i < a.ring().num_slots(); ++i) c[i] = a.c_[i];
  return Elem(ring, c);
}

Elem sqrt_one_plus_m(const Elem& u) {
  const Ring& ring = u.ring();
  const Elem one = ring.one();
  if (!u.is_fixed() || (u - one).is_unit())
    throw Error(ErrorKind::NotInOnePlusM, u.to_string() + " is not in 1 + m");
  Elem x = one;
  for (int i = 0; i <= ring.e() + 1; ++i) {
    const Elem residual = x * x - u;
    if (residual.is_zero()) return x;
    x = x - residual * inverse(x + x);
  }
  throw Error(ErrorKind::Internal, "square root iteration did not terminate");
}

bool is_square_unit(const Elem& r) {
  if (!r.is_unit()) throw Error(ErrorKind::NotAUnit, r.to_string() + " is not a unit");
  if (!r.is_fixed()) throw Error(ErrorKind::NotFixed, r.to_string() + " is not in R");
  // 1 + m consists of squares, so only the residue matters (Euler's criterion in F_q).
  const Elem t = pow(r, (r.ring().q() - 1) / 2);
  return !(t - r.ring().one()).is_unit();
}

Elem solve_norm_equation(const Elem& r) {
  if (!r.is_unit()) throw Error(ErrorKind::NotAUnit, r.to_string() + " is not a unit");
  if (!r.is_fixed()) throw Error(ErrorKind::NotFixed, r.to_string() + " is not in R");
  for (const Elem& a : r.ring().residue_reps()) {
    if (a.is_zero()) continue;
    const Elem n = norm(a);
    if ((n - r).is_unit()) continue;
    // n = r (1 + m), so a * sqrt(r / n) has norm exactly r.
    return a * sqrt_one_plus_m(r * inverse(n));
  }
  throw Error(ErrorKind::NotANorm, r.to_string() + " is not a norm in " + r.ring().name());
}

}  // namespace hermlock
