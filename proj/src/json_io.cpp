#include "qlab/json_io.hpp"

#include "qlab/error.hpp"

namespace qlab {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("SchemaError", "complex scalar must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  Json j;
  j["n"] = m.rows();
  j["rows"] = std::move(rows);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    fail("SchemaError", "matrix must be {\"n\": dim, \"rows\": [...]} ");
  const int n = j["n"].get<int>();
  const Json& rows = j["rows"];
  if (n <= 0 || !rows.is_array() || static_cast<int>(rows.size()) != n)
    fail("SchemaError", "matrix row count does not match n");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      fail("SchemaError", "matrix column count does not match n");
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    amps.push_back(complex_to_json(v(i)));
  Json j;
  j["n"] = v.size();
  j["amps"] = std::move(amps);
  return j;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("amps"))
    fail("SchemaError", "vector must be {\"n\": dim, \"amps\": [...]}");
  const int n = j["n"].get<int>();
  const Json& amps = j["amps"];
  if (n <= 0 || !amps.is_array() || static_cast<int>(amps.size()) != n)
    fail("SchemaError", "vector length does not match n");
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_from_json(amps[i]);
  return v;
}

Json qbit_to_json(const Qbit& q) {
  Json j;
  j["alpha"] = complex_to_json(q.alpha);
  j["beta"] = complex_to_json(q.beta);
  return j;
}

Qbit qbit_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
    fail("SchemaError", "qbit must be {\"alpha\": [re,im], \"beta\": [re,im]}");
  return make_qbit(complex_from_json(j["alpha"]), complex_from_json(j["beta"]));
}

}  // namespace qlab
