#include "hermlock/serialize.hpp"

#include <limits>

namespace hermlock {

namespace {

std::int64_t as_int(const Json& j) {
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, "expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

}  // namespace

Json bigint_to_json(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  if (x < 0 && x >= std::numeric_limits<std::int64_t>::min()) return x.convert_to<std::int64_t>();
  return x.str();
}

Json elem_to_json(const Elem& a) {
  const auto c = a.coeffs();
  if (c.size() == 1) return c[0];
  return Json(std::vector<std::int64_t>(c.begin(), c.end()));
}

Elem elem_from_json(const Ring& ring, const Json& j) {
  if (j.is_number_integer()) return ring.from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "ring element must be an integer or coefficient array");
  if (j.size() > ring.num_slots())
    throw Error(ErrorKind::ParseError, "too many coefficients for " + ring.name() + ": " + j.dump());
  std::vector<std::int64_t> c;
  for (const auto& x : j) c.push_back(as_int(x));
  return ring.from_coeffs(c);
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorKind::ParseError, "matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  Mat out(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = elem_from_json(ring, j[r][c]);
  }
  return out;
}

Mat vector_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "vector must be a non-empty array");
  std::vector<Elem> v;
  for (const auto& x : j) v.push_back(elem_from_json(ring, x));
  return Mat::column(v);
}

Json unitary_to_json(const UnitaryElement& g) {
  return Json{{"ring", g.ring().name()}, {"gram", mat_to_json(g.space().gram())}, {"matrix", mat_to_json(g.matrix())}};
}

UnitaryElement unitary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ring") || !j.contains("gram") || !j.contains("matrix"))
    throw Error(ErrorKind::ParseError, "unitary element needs ring, gram and matrix");
  if (!j["ring"].is_string()) throw Error(ErrorKind::ParseError, "ring must be a spec string");
  const Ring ring(parse_ring_spec(j["ring"].get<std::string>()));
  return UnitaryElement(HermitianSpace(mat_from_json(ring, j["gram"])), mat_from_json(ring, j["matrix"]));
}

}  // namespace hermlock
