#include "hermlock/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

#include "hermlock/counting.hpp"

namespace hermlock {

namespace {

using Key = std::vector<std::uint32_t>;

std::uint64_t parse_count(std::string_view text) {
  // Accepts plain integers and the 1e8 shorthand.
  const auto e = text.find_first_of("eE");
  std::uint64_t mant = 0, exp = 0;
  const auto parse = [&](std::string_view part, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
      throw Error(ErrorKind::ParseError, "bad budget value '" + std::string(text) + "'");
  };
  if (e == std::string_view::npos) {
    parse(text, mant);
    return mant;
  }
  parse(text.substr(0, e), mant);
  parse(text.substr(e + 1), exp);
  for (std::uint64_t i = 0; i < exp; ++i) mant *= 10;
  return mant;
}

/// Index-level arithmetic tables for a small ring.
struct Tables {
  Ring ring;
  std::uint32_t n = 0;
  std::vector<Elem> elems;
  std::vector<std::uint32_t> add, mul, conj;
  std::vector<char> unit;

  explicit Tables(const Ring& r) : ring(r) {
    n = static_cast<std::uint32_t>(*r.size());
    elems.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) elems.push_back(r.element(i));
    add.resize(std::size_t(n) * n);
    mul.resize(std::size_t(n) * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        add[i * n + j] = static_cast<std::uint32_t>(r.index_of(elems[i] + elems[j]));
        mul[i * n + j] = static_cast<std::uint32_t>(r.index_of(elems[i] * elems[j]));
      }
    for (std::uint32_t i = 0; i < n; ++i) {
      conj.push_back(static_cast<std::uint32_t>(r.index_of(elems[i].conj())));
      unit.push_back(elems[i].is_unit());
    }
  }

  std::uint32_t plus(std::uint32_t a, std::uint32_t b) const { return add[a * n + b]; }
  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[a * n + b]; }

  Key key(const Mat& g) const {
    Key out;
    out.reserve(g.entries().size());
    for (const Elem& x : g.entries()) out.push_back(static_cast<std::uint32_t>(ring.index_of(x)));
    return out;
  }

  Mat matrix(const Key& k, std::size_t rows, std::size_t cols) const {
    Mat g(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) g(i, j) = elems[k[i * cols + j]];
    return g;
  }

  Key product(const Key& a, const Key& b, std::size_t m) const {
    Key out(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::uint32_t acc = 0;
        for (std::size_t k = 0; k < m; ++k) acc = plus(acc, times(a[i * m + k], b[k * m + j]));
        out[i * m + j] = acc;
      }
    return out;
  }
};

/// Every vector of A^m with G v precomputed, so h(u, v) = sum conj(u_i) (Gv)_i.
struct VectorPool {
  std::size_t m = 0;
  std::uint64_t count = 0;
  std::vector<std::uint32_t> coords;  // count x m
  std::vector<std::uint32_t> gv;      // count x m
  std::vector<char> primitive;

  VectorPool(const Tables& t, const Key& gram, std::size_t dim) : m(dim) {
    count = 1;
    for (std::size_t i = 0; i < m; ++i) count *= t.n;
    coords.resize(count * m);
    gv.resize(count * m);
    primitive.resize(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t x = idx;
      bool prim = false;
      for (std::size_t i = 0; i < m; ++i) {
        coords[idx * m + i] = static_cast<std::uint32_t>(x % t.n);
        prim = prim || t.unit[coords[idx * m + i]];
        x /= t.n;
      }
      primitive[idx] = prim;
      for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < m; ++j) acc = t.plus(acc, t.times(gram[i * m + j], coords[idx * m + j]));
        gv[idx * m + i] = acc;
      }
    }
  }

  std::uint32_t form(const Tables& t, std::uint64_t u, std::uint64_t v) const {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < m; ++i) acc = t.plus(acc, t.times(t.conj[coords[u * m + i]], gv[v * m + i]));
    return acc;
  }

  Mat vector(const Tables& t, std::uint64_t idx) const {
    Mat v(t.ring, m, 1);
    for (std::size_t i = 0; i < m; ++i) v(i, 0) = t.elems[coords[idx * m + i]];
    return v;
  }
};

void check_ring(const Ring& r, const OracleBudget& budget) {
  const auto size = r.size();
  if (!size || *size > budget.max_ring)
    throw Error(ErrorKind::BudgetExceeded, "|A| of " + r.name() + " exceeds the oracle ring budget " +
                                               std::to_string(budget.max_ring));
}

std::uint64_t pool_size(const Ring& r, std::size_t m, const OracleBudget& budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= *r.size();
    if (total > budget.max_nodes)
      throw Error(ErrorKind::BudgetExceeded, "|A|^m exceeds the oracle node budget " + std::to_string(budget.max_nodes));
  }
  return total;
}

std::vector<Key> search_group(const Tables& t, const HermitianSpace& s, const OracleBudget& budget) {
  const std::size_t m = s.dim();
  if (m > budget.max_m)
    throw Error(ErrorKind::BudgetExceeded, "m = " + std::to_string(m) + " exceeds the oracle rank budget " +
                                               std::to_string(budget.max_m));
  pool_size(s.ring(), m, budget);
  const Key gram = t.key(s.gram());
  const VectorPool pool(t, gram, m);
  std::uint64_t nodes = pool.count;
  // Candidates for column j by their own length.
  std::vector<std::vector<std::uint64_t>> candidates(m);
  for (std::uint64_t v = 0; v < pool.count; ++v)
    for (std::size_t j = 0; j < m; ++j)
      if (pool.primitive[v] && pool.form(t, v, v) == gram[j * m + j]) candidates[j].push_back(v);

  std::vector<Key> out;
  std::vector<std::uint64_t> chosen(m);
  std::function<void(std::size_t)> extend = [&](std::size_t j) {
    if (j == m) {
      Key g(m * m);
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < m; ++r) g[r * m + c] = pool.coords[chosen[c] * m + r];
      out.push_back(std::move(g));
      return;
    }
    for (std::uint64_t v : candidates[j]) {
      if (++nodes > budget.max_nodes)
        throw Error(ErrorKind::BudgetExceeded, "group search exceeded " + std::to_string(budget.max_nodes) + " nodes");
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = pool.form(t, chosen[i], v) == gram[i * m + j];
      if (!ok) continue;
      chosen[j] = v;
      extend(j + 1);
    }
  };
  extend(0);
  return out;
}

/// Exact group test in O(|S| log |S|) products: grow H = <T> from generators
/// taken out of S, failing as soon as H leaves S. At the end S is inside H, so S = H.
bool is_group_keys(const Tables& t, const std::vector<Key>& keys, std::size_t m, const Key& gram) {
  if (keys.empty()) return false;
  const auto one = static_cast<std::uint32_t>(t.ring.index_of(t.ring.one()));
  Key id(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) id[i * m + i] = one;

  std::set<Key> members(keys.begin(), keys.end());
  if (members.size() != keys.size() || !members.count(id)) return false;

  // Inverses through g^{-1} = G^{-1} g*' G.
  const Mat g_mat = t.matrix(gram, m, m);
  const Key ginv = t.key(invert(g_mat));
  for (const Key& g : keys) {
    Key gstar(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) gstar[i * m + j] = t.conj[g[j * m + i]];
    if (!members.count(t.product(t.product(ginv, gstar, m), gram, m))) return false;
  }

  std::vector<Key> gens;
  std::set<Key> h = {id};
  for (const Key& s : keys) {
    if (h.count(s)) continue;
    gens.push_back(s);
    std::vector<Key> frontier(h.begin(), h.end());
    while (!frontier.empty()) {
      std::vector<Key> next;
      for (const Key& x : frontier)
        for (const Key& g : gens) {
          Key y = t.product(x, g, m);
          if (h.count(y)) continue;
          if (!members.count(y)) return false;
          h.insert(y);
          next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  return h.size() == members.size();
}

std::string str(const BigInt& x) { return x.str(); }

std::string instance_name(const Ring& r, std::size_t m, Kind k) {
  return r.name() + " m=" + std::to_string(m) + " kind " + std::string(kind_name(k));
}

void record(std::vector<CheckRecord>& out, std::string check, std::string instance, const std::string& expected,
            const std::string& actual) {
  out.push_back({std::move(check), std::move(instance), expected, actual, expected == actual});
}

std::vector<Kind> kinds_for(const Ring& r) {
  if (r.norm_surjective()) return {Kind::I};
  return {Kind::I, Kind::II};
}

void fiber_checks(std::vector<CheckRecord>& out, const Ring& r, std::size_t m, Kind k, const OracleBudget& budget) {
  const HermitianSpace s = standard_space(r, m, k);
  const auto fibers = length_fibers(s, budget);
  const GroupOrderQuery q{RingShape::of(r), m, k};
  const std::string name = instance_name(r, m, k);
  BigInt total = 0;
  std::map<LengthClass, std::set<std::uint64_t>> seen;
  for (const auto& f : fibers) {
    total += f.count;
    seen[classify_length(f.length)].insert(f.count);
  }
  for (LengthClass c : {LengthClass::UnitSquare, LengthClass::UnitNonSquare, LengthClass::NonUnit}) {
    const auto& vals = seen[c];
    if (vals.empty()) continue;
    const std::string actual = vals.size() == 1 ? std::to_string(*vals.begin()) : "mixed";
    record(out, "length_fibers/" + std::string(length_class_name(c)), name, str(primitive_count(q, c)), actual);
  }
  const auto c = r.constants();
  const unsigned mm = static_cast<unsigned>(m);
  record(out, "sum_rule", name, str(boost::multiprecision::pow(c.ring, mm) - boost::multiprecision::pow(c.radical, mm)),
         str(total));
}

void group_checks(std::vector<CheckRecord>& out, const Ring& r, std::size_t m, Kind k, const OracleBudget& budget) {
  const HermitianSpace s = standard_space(r, m, k);
  const auto group = enumerate_group(s, budget);
  const std::string name = instance_name(r, m, k);
  record(out, "group_order", name, str(unitary_order({RingShape::of(r), m, k})), std::to_string(group.size()));
  record(out, "group_axioms", name, "true", is_group(group) ? "true" : "false");

  // Orbits are the primitive length fibers.
  const auto fibers = length_fibers(s, budget);
  const Tables t(r);
  const VectorPool pool(t, t.key(s.gram()), m);
  std::set<std::uint32_t> done;
  bool ok = true;
  for (std::uint64_t v = 0; v < pool.count; ++v) {
    if (!pool.primitive[v]) continue;
    const std::uint32_t len = pool.form(t, v, v);
    if (!done.insert(len).second) continue;
    const auto os = orbit_and_stabilizer(group, pool.vector(t, v));
    const auto it = std::find_if(fibers.begin(), fibers.end(),
                                 [&](const LengthFiber& f) { return r.index_of(f.length) == len; });
    ok = ok && it != fibers.end() && it->count == os.orbit.size() &&
         os.orbit.size() * os.stabilizer.size() == group.size();
  }
  record(out, "orbits_are_fibers", name, "true", ok ? "true" : "false");
}

void reduction_checks(std::vector<CheckRecord>& out, const Ring& r, Kind k, const OracleBudget& budget) {
  const std::size_t m = 2;
  const HermitianSpace s = standard_space(r, m, k);
  const HermitianSpace sbar = reduce(s, 1);
  const auto group = enumerate_group(s, budget);
  const auto gbar = enumerate_group(sbar, budget);
  const Tables tbar(sbar.ring());
  std::set<Key> image, target;
  std::size_t kernel = 0;
  for (const auto& g : group) {
    const Key key = tbar.key(reduce(g, 1).matrix());
    image.insert(key);
    if (reduce(g, 1).matrix().is_identity()) ++kernel;
  }
  for (const auto& g : gbar) target.insert(tbar.key(g.matrix()));
  const std::string name = instance_name(r, m, k) + " -> " + sbar.ring().name();
  record(out, "surjectivity", name, std::to_string(target.size()), image == target ? std::to_string(image.size()) : "mismatch");

  std::size_t lifted = 0;
  for (const auto& g : gbar) {
    const UnitaryElement up = lift(s, g.matrix());
    if (is_unitary(s, up.matrix()) && reduce(up, 1).matrix() == g.matrix()) ++lifted;
  }
  record(out, "lift", name, std::to_string(gbar.size()), std::to_string(lifted));

  const BigInt formula = kernel_order(r, m, 1);
  record(out, "kernel_formula", name, str(formula), std::to_string(kernel_enumerate(s, 1).size()));
  record(out, "kernel_filtered", name, str(formula), std::to_string(kernel));
}

void formula_checks(std::vector<CheckRecord>& out) {
  for (Family fam : {Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew})
    for (std::uint64_t p : {3u, 5u, 7u})
      for (int f : {1, 2})
        for (int e = 1; e <= 4; ++e) {
          const std::uint64_t q = f == 1 ? p : p * p;
          const RingShape shape{fam, q, e};
          const std::string name =
              std::string(family_name(fam)) + " p=" + std::to_string(p) + " f=" + std::to_string(f) + " e=" + std::to_string(e);
          record(out, "identity", name, "true", identity_check(shape) ? "true" : "false");
          for (std::size_t m = 1; m <= 5; ++m)
            for (Kind k : {Kind::I, Kind::II}) {
              const GroupOrderQuery qq{shape, m, k};
              const BigInt zxz = unitary_order(qq);
              const std::string qn = name + " m=" + std::to_string(m) + " kind " + std::string(kind_name(k));
              record(out, "zxz_expressions", qn, str(zxz), str(unitary_order_alternate(qq)));
              if (const auto spec = unitary_order_specialized(qq)) record(out, "specialized_order", qn, str(zxz), str(*spec));
            }
          if (!shape.norm_surjective()) {
            const BigInt iso = m2_order(shape, true), non = m2_order(shape, false);
            out.push_back({"m2_inequality", name, "non-isotropic > isotropic", str(non) + " > " + str(iso), non > iso});
          }
        }
}

void stabilizer_checks(std::vector<CheckRecord>& out, const Ring& r, const OracleBudget& budget) {
  const std::size_t m = 3;
  for (Kind k : {Kind::I, Kind::II}) {
    const HermitianSpace s = standard_space(r, m, k);
    const auto group = enumerate_group(s, budget);
    const Tables t(r);
    const VectorPool pool(t, t.key(s.gram()), m);
    std::set<std::uint32_t> done;
    for (std::uint64_t v = 0; v < pool.count; ++v) {
      if (!pool.primitive[v]) continue;
      const std::uint32_t len = pool.form(t, v, v);
      if (!done.insert(len).second) continue;
      const Elem lv = t.elems[len];
      const auto os = orbit_and_stabilizer(group, pool.vector(t, v));
      record(out, "stabilizer", instance_name(r, m, k) + " length " + lv.to_string(),
             str(stabilizer_order({RingShape::of(r), m, k}, classify_length(lv))), std::to_string(os.stabilizer.size()));
    }
  }
}

void weil_checks(std::vector<CheckRecord>& out, const OracleBudget& budget) {
  // l = 1, q = 3: B = F_3 and the index is an orbit size in O_m(3).
  const Ring f3({Family::Ramified, 3, 1, 1});
  for (std::size_t m : {2u, 3u})
    for (Kind k : {Kind::I, Kind::II}) {
      const HermitianSpace s = standard_space(f3, m, k);
      const auto group = enumerate_group(s, budget);
      for (const Elem& t : f3.enumerate(Subset::Fixed)) {
        const auto v = represent_length(s, t);
        const std::string name = "q=3 l=1 m=" + std::to_string(m) + " kind " + std::string(kind_name(k)) + " t=" + t.to_string();
        if (!v) continue;
        const auto os = orbit_and_stabilizer(group, *v);
        record(out, "weil_index", name, str(weil_degree(3, 1, m, k, classify_length(t)).index), std::to_string(os.orbit.size()));
      }
    }
}

}  // namespace

OracleBudget OracleBudget::parse(std::string_view text) {
  OracleBudget b;
  if (text.find('=') == std::string_view::npos) {
    b.max_nodes = parse_count(text);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      const auto item = text.substr(pos, comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected key=value in budget '" + std::string(text) + "'");
      const auto k = item.substr(0, eq);
      const std::uint64_t v = parse_count(item.substr(eq + 1));
      if (k == "nodes") b.max_nodes = v;
      else if (k == "ring") b.max_ring = v;
      else if (k == "m") b.max_m = v;
      else throw Error(ErrorKind::ParseError, "unknown budget key '" + std::string(k) + "' (nodes, ring, m)");
      pos = comma + 1;
    }
  }
  if (b.max_nodes == 0 || b.max_ring == 0 || b.max_m == 0)
    throw Error(ErrorKind::ParseError, "budget values must be positive");
  return b;
}

OracleBudget OracleBudget::from_env() {
  const char* env = std::getenv("HERMLOCK_BUDGET");
  if (!env || !*env) return {};
  return parse(env);
}

std::vector<std::uint32_t> matrix_key(const Mat& g) {
  std::vector<std::uint32_t> out;
  for (const Elem& x : g.entries()) out.push_back(static_cast<std::uint32_t>(g.ring().index_of(x)));
  return out;
}

std::vector<UnitaryElement> enumerate_group(const HermitianSpace& s, const OracleBudget& budget) {
  check_ring(s.ring(), budget);
  const Tables t(s.ring());
  const auto keys = search_group(t, s, budget);
  std::vector<UnitaryElement> out;
  out.reserve(keys.size());
  for (const Key& k : keys) out.emplace_back(s, t.matrix(k, s.dim(), s.dim()));
  return out;
}

bool is_group(const std::vector<UnitaryElement>& elements) {
  if (elements.empty()) return false;
  const Tables t(elements.front().ring());
  std::vector<Key> keys;
  for (const auto& g : elements) keys.push_back(t.key(g.matrix()));
  return is_group_keys(t, keys, elements.front().dim(), t.key(elements.front().space().gram()));
}

std::vector<LengthFiber> length_fibers(const HermitianSpace& s, const OracleBudget& budget) {
  check_ring(s.ring(), budget);
  pool_size(s.ring(), s.dim(), budget);
  const Tables t(s.ring());
  const VectorPool pool(t, t.key(s.gram()), s.dim());
  std::vector<std::uint64_t> counts(t.n, 0);
  for (std::uint64_t v = 0; v < pool.count; ++v)
    if (pool.primitive[v]) ++counts[pool.form(t, v, v)];
  std::vector<LengthFiber> out;
  for (std::uint32_t i = 0; i < t.n; ++i)
    if (t.elems[i].is_fixed()) out.push_back({t.elems[i], counts[i]});
  return out;
}

OrbitStabilizer orbit_and_stabilizer(const std::vector<UnitaryElement>& group, const Mat& v) {
  OrbitStabilizer out;
  std::set<Key> seen;
  for (const auto& g : group) {
    const Mat w = g.apply(v);
    if (seen.insert(matrix_key(w)).second) out.orbit.push_back(w);
    if (w == v) out.stabilizer.push_back(g);
  }
  return out;
}

OrbitStabilizer orbit_and_stabilizer(const HermitianSpace& s, const Mat& v, const OracleBudget& budget) {
  if (v.rows() != s.dim() || v.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "vector does not match the space");
  return orbit_and_stabilizer(enumerate_group(s, budget), v);
}

std::vector<CheckRecord> run_verify(std::string_view grid, const OracleBudget& budget) {
  if (grid != "small" && grid != "full")
    throw Error(ErrorKind::InvalidQuery, "grid must be small or full, got '" + std::string(grid) + "'");
  std::vector<CheckRecord> out;
  const std::vector<RingSpec> rings = {{Family::Orthogonal, 3, 1, 1}, {Family::Orthogonal, 3, 1, 2},
                                       {Family::Ramified, 3, 1, 2},   {Family::Ramified, 3, 1, 3},
                                       {Family::Unramified, 3, 1, 1}, {Family::Skew, 3, 1, 2}};
  for (const auto& spec : rings) {
    const Ring r(spec);
    for (std::size_t m : {1u, 2u})
      for (Kind k : kinds_for(r)) {
        group_checks(out, r, m, k, budget);
        if (m == 2) fiber_checks(out, r, m, k, budget);
      }
  }
  for (const RingSpec& spec : {RingSpec{Family::Orthogonal, 3, 1, 2}, RingSpec{Family::Ramified, 3, 1, 2}})
    for (Kind k : {Kind::I, Kind::II}) reduction_checks(out, Ring(spec), k, budget);
  formula_checks(out);
  weil_checks(out, budget);
  if (grid == "full") {
    const Ring z9({Family::Orthogonal, 3, 1, 2});
    for (Kind k : {Kind::I, Kind::II}) group_checks(out, z9, 3, k, budget);
    stabilizer_checks(out, Ring({Family::Orthogonal, 3, 1, 1}), budget);
    stabilizer_checks(out, z9, budget);
  }
  return out;
}

}  // namespace hermlock
