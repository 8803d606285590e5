#include "qlab/hilbert.hpp"

#include "qlab/error.hpp"

#include <cmath>

namespace qlab {

bool StateVector::normalized(double tol) const {
  return std::abs(amps.squaredNorm() - 1.0) <= tol;
}

StateVector StateVector::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim)
    fail("DimensionMismatch", "basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return {v};
}

StateVector StateVector::from(std::initializer_list<Complex> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& z : values) v(i++) = z;
  return {v};
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& m) {
  Matrix id = Matrix::Identity(m.rows(), m.cols());
  return (m * m.adjoint() - id).norm();
}

HermitianOp HermitianOp::from(Matrix m) {
  if (m.rows() != m.cols()) fail("DimensionMismatch", "operator must be square");
  if (hermiticity_defect(m) > kEntryTol)
    fail("NonHermitian", "matrix is not self-adjoint");
  return {std::move(m)};
}

UnitaryOp UnitaryOp::from(Matrix m) {
  if (m.rows() != m.cols()) fail("DimensionMismatch", "operator must be square");
  if (unitarity_defect(m) > kComposedTol)
    fail("NonUnitary", "U U^dag deviates from the identity");
  return {std::move(m)};
}

Complex inner_product(const StateVector& x, const StateVector& y) {
  if (x.dim() != y.dim()) fail("DimensionMismatch", "inner product dims differ");
  // Eigen's dot() conjugates its object; (x,y) is linear in x.
  return y.amps.dot(x.amps);
}

double born_probability(const StateVector& x, const StateVector& y) {
  if (x.dim() != y.dim()) fail("DimensionMismatch", "born probability dims differ");
  if (!x.normalized(kNormRejectTol) || !y.normalized(kNormRejectTol))
    fail("NotNormalized", "born probability needs unit-norm states");
  return std::norm(inner_product(x, y));
}

double expectation(const HermitianOp& a, const StateVector& x) {
  if (a.dim() != x.dim()) fail("DimensionMismatch", "expectation dims differ");
  if (!x.normalized(kNormRejectTol))
    fail("NotNormalized", "expectation needs a unit-norm state");
  SpectralDecomposition sd = spectral_decompose(a);
  double value = 0.0;
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    // |(x, a_i)|^2 summed over a degenerate eigenspace is x^dag P_i x.
    Complex w = x.amps.dot(sd.projectors[i] * x.amps);
    value += sd.eigenvalues[i] * w.real();
  }
  return value;
}

SpectralDecomposition spectral_decompose(const HermitianOp& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries);
  if (solver.info() != Eigen::Success)
    fail("EigenSolverFailure", "self-adjoint eigendecomposition did not converge");

  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();

  SpectralDecomposition sd;
  const int n = a.dim();
  int i = 0;
  while (i < n) {
    int j = i;
    // merge eigenvalues within 1e-9 into one projector
    while (j + 1 < n && vals(j + 1) - vals(i) <= 1e-9) ++j;
    Matrix p = Matrix::Zero(n, n);
    double lambda = 0.0;
    for (int k = i; k <= j; ++k) {
      p += vecs.col(k) * vecs.col(k).adjoint();
      lambda += vals(k);
    }
    sd.eigenvalues.push_back(lambda / (j - i + 1));
    sd.projectors.push_back(std::move(p));
    i = j + 1;
  }
  return sd;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    fail("DimensionMismatch", "commutator needs equal square dims");
  return a * b - b * a;
}

StateVector evolve(const UnitaryOp& u, const StateVector& x) {
  if (u.dim() != x.dim()) fail("DimensionMismatch", "evolve dims differ");
  if (!x.normalized(kNormRejectTol))
    fail("NotNormalized", "evolve needs a unit-norm state");
  return {u.entries * x.amps};
}

UnitaryOp matrix_exponential_evolution(const HermitianOp& h, double t,
                                       double hbar) {
  if (hbar <= 0.0) fail("InvalidArgument", "hbar must be positive");
  SpectralDecomposition sd = spectral_decompose(h);
  Matrix u = Matrix::Zero(h.dim(), h.dim());
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    Complex phase = std::exp(Complex(0.0, -sd.eigenvalues[i] * t / hbar));
    u += phase * sd.projectors[i];
  }
  return UnitaryOp::from(std::move(u));
}

bool ray_equal(const Vector& x, const Vector& y, double tol) {
  if (x.size() != y.size()) return false;
  // min over phases of ||x - e^{i theta} y||^2 = ||x||^2 + ||y||^2 - 2|<x,y>|
  double d2 = x.squaredNorm() + y.squaredNorm() - 2.0 * std::abs(y.dot(x));
  return d2 <= tol * tol;
}

}  // namespace qlab
