#include "qlab/u2.hpp"

#include "qlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qlab {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

Eigen::Matrix2cd u2_matrix(const U2Params& p) {
  const double c = std::cos(p.omega), s = std::sin(p.omega);
  Eigen::Matrix2cd m;
  m << std::exp(kI * p.alpha) * c, -std::exp(-kI * p.phi) * s,
      std::exp(kI * p.phi) * s, std::exp(-kI * p.alpha) * c;
  return std::exp(-kI * p.beta) * m;
}

U2Params u2_params_from_matrix(const Eigen::Matrix2cd& u) {
  if (unitarity_defect(u) > kComposedTol)
    fail("NonUnitary", "parameter extraction needs a unitary matrix");

  // Split off the determinant phase, then read the SU(2) part.
  Complex det = u.determinant();
  double beta = -0.5 * std::arg(det);
  Eigen::Matrix2cd su = std::exp(kI * beta) * u;

  const double c = std::abs(su(0, 0));
  const double s = std::abs(su(1, 0));

  double alpha = c > kEntryTol ? std::arg(su(0, 0)) : 0.0;
  double phi = s > kEntryTol ? std::arg(su(1, 0)) : 0.0;

  // Fold phases outside [-pi/2, pi/2] into the signs of cos/sin.
  double csign = 1.0, ssign = 1.0;
  if (alpha > kPi / 2) {
    alpha -= kPi;
    csign = -1.0;
  } else if (alpha < -kPi / 2) {
    alpha += kPi;
    csign = -1.0;
  }
  if (phi > kPi / 2) {
    phi -= kPi;
    ssign = -1.0;
  } else if (phi < -kPi / 2) {
    phi += kPi;
    ssign = -1.0;
  }

  U2Params p;
  p.omega = std::atan2(ssign * s, csign * c);
  p.alpha = alpha;
  p.beta = beta;
  p.phi = phi;
  return p;
}

Eigen::Matrix2cd gate(GateName name) {
  Eigen::Matrix2cd m;
  switch (name) {
    case GateName::identity:
      m << 1, 0, 0, 1;
      break;
    case GateName::not_gate:
      m << 0, 1, 1, 0;
      break;
    case GateName::sqrt_not:
      m << 1, -1, 1, 1;
      m /= std::sqrt(2.0);
      break;
    case GateName::sqrt_not_prime:
      m << Complex(1, 1), Complex(1, -1), Complex(1, -1), Complex(1, 1);
      m /= 2.0;
      break;
  }
  return m;
}

GateName parse_gate_name(const std::string& name) {
  if (name == "identity") return GateName::identity;
  if (name == "not") return GateName::not_gate;
  if (name == "sqrt_not") return GateName::sqrt_not;
  if (name == "sqrt_not_prime") return GateName::sqrt_not_prime;
  fail("UnknownGate", "no gate named '" + name + "'");
}

std::string gate_name_string(GateName name) {
  switch (name) {
    case GateName::identity: return "identity";
    case GateName::not_gate: return "not";
    case GateName::sqrt_not: return "sqrt_not";
    case GateName::sqrt_not_prime: return "sqrt_not_prime";
  }
  return {};
}

FixedPointReport fixed_point_report(const Eigen::Matrix2cd& u) {
  if (unitarity_defect(u) > kComposedTol)
    fail("NonUnitary", "fixed-point analysis needs a unitary matrix");

  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(u);
  if (solver.info() != Eigen::Success)
    fail("EigenSolverFailure", "2x2 eigendecomposition did not converge");

  FixedPointReport report;
  std::array<double, 2> phases = {std::arg(solver.eigenvalues()(0)),
                                  std::arg(solver.eigenvalues()(1))};
  std::array<int, 2> order = {0, 1};
  if (phases[1] < phases[0]) std::swap(order[0], order[1]);
  report.eigenphases = {phases[order[0]], phases[order[1]]};

  for (int idx : order) {
    if (std::abs(solver.eigenvalues()(idx) - Complex(1.0, 0.0)) > 1e-9) continue;
    Vector v = solver.eigenvectors().col(idx);
    v /= v.norm();
    // fix the free phase so reports are reproducible
    for (int r = 0; r < 2; ++r) {
      if (std::abs(v(r)) > 1e-9) {
        v *= std::conj(v(r)) / std::abs(v(r));
        break;
      }
    }
    report.fixed_vectors.push_back({v});
  }
  report.has_fixed_point = !report.fixed_vectors.empty();
  return report;
}

Eigen::Matrix2cd generalized_diag(const U2Params& p, double mu, double lambda) {
  Eigen::Matrix2cd u = u2_matrix(p);
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::exp(kI * mu);
  d(1, 1) = std::exp(kI * lambda);
  return u.adjoint() * d * u;
}

}  // namespace qlab
