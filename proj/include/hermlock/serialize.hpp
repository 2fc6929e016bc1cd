#pragma once

#include <json.hpp>

#include "hermlock/group.hpp"

namespace hermlock {

using Json = nlohmann::ordered_json;

/// Numbers when they fit in 64 bits, decimal strings otherwise.
Json bigint_to_json(const BigInt& x);

/// An integer for single-slot rings, the coefficient array otherwise.
Json elem_to_json(const Elem& a);
/// Accepts an integer or a coefficient array. Throws ParseError.
Elem elem_from_json(const Ring& ring, const Json& j);

/// Array of rows.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Ring& ring, const Json& j);
/// Flat array read as a column vector.
Mat vector_from_json(const Ring& ring, const Json& j);

/// {"ring": spec, "gram": [...], "matrix": [...]}.
Json unitary_to_json(const UnitaryElement& g);
/// Inverse of unitary_to_json; re-checks unitarity.
UnitaryElement unitary_from_json(const Json& j);

}  // namespace hermlock
