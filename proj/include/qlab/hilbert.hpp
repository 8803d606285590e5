#pragma once

// Finite-dimensional complex Hilbert-space primitives: state vectors,
// Hermitian/unitary operators, spectral decomposition, Born probabilities,
// expectation values, commutators and unitary time evolution.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances used repo-wide: entrywise checks, composed/Frobenius checks,
// and the normalization threshold past which inputs are rejected.
inline constexpr double kEntryTol = 1e-12;
inline constexpr double kComposedTol = 1e-10;
inline constexpr double kNormRejectTol = 1e-9;

struct StateVector {
  Vector amps;

  int dim() const { return static_cast<int>(amps.size()); }
  double norm() const { return amps.norm(); }
  bool normalized(double tol = kEntryTol) const;

  static StateVector basis(int dim, int index);
  static StateVector from(std::initializer_list<Complex> values);
};

struct HermitianOp {
  Matrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  // Rejects matrices that are not self-adjoint within kEntryTol per entry.
  static HermitianOp from(Matrix m);
};

struct UnitaryOp {
  Matrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  // Rejects matrices with U U^dag - I exceeding kComposedTol in Frobenius norm.
  static UnitaryOp from(Matrix m);
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending; near-degenerate values merged
  std::vector<Matrix> projectors;   // orthogonal, summing to the identity
};

double hermiticity_defect(const Matrix& m);
double unitarity_defect(const Matrix& m);

// Scalar product, linear in the first argument: (x,y) = sum_i x_i conj(y_i).
Complex inner_product(const StateVector& x, const StateVector& y);

// |(x,y)|^2 for normalized x, y.
double born_probability(const StateVector& x, const StateVector& y);

// sum_i alpha_i |(x,a_i)|^2 over the spectral representation of A.
double expectation(const HermitianOp& a, const StateVector& x);

// A = sum_i alpha_i P_i; eigenvalues within 1e-9 are merged into one projector.
SpectralDecomposition spectral_decompose(const HermitianOp& a);

Matrix commutator(const Matrix& a, const Matrix& b);

StateVector evolve(const UnitaryOp& u, const StateVector& x);

// exp(-i H t / hbar) through the spectral representation of H.
UnitaryOp matrix_exponential_evolution(const HermitianOp& h, double t,
                                       double hbar = 1.0);

// Equality up to a global unit-modulus factor, for normalized vectors.
bool ray_equal(const Vector& x, const Vector& y, double tol = 1e-9);

}  // namespace qlab
