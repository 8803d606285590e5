#pragma once

// Repo-wide JSON schema: complex scalar = [re, im];
// matrix = {"n": dim, "rows": [[[re,im], ...], ...]};
// vector = {"n": dim, "amps": [[re,im], ...]};
// qbit   = {"alpha": [re,im], "beta": [re,im]}.

#include "qlab/hilbert.hpp"
#include "qlab/qbit.hpp"

#include "json.hpp"

namespace qlab {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json qbit_to_json(const Qbit& q);
Qbit qbit_from_json(const Json& j);

}  // namespace qlab
