#include "qlab/two_state.hpp"

#include "qlab/error.hpp"

#include <cmath>

namespace qlab {

TwoStateProblem TwoStateProblem::make(double E, double A, double hbar,
                                      StateVector psi0) {
  if (hbar <= 0.0) fail("InvalidArgument", "hbar must be positive");
  if (psi0.dim() != 2) fail("DimensionMismatch", "two-state psi0 must have dim 2");
  if (!psi0.normalized(kNormRejectTol))
    fail("NotNormalized", "psi0 must be a unit vector");
  return {E, A, hbar, std::move(psi0)};
}

TwoStateProblem TwoStateProblem::ground_start(double E, double A, double hbar) {
  return make(E, A, hbar, StateVector::basis(2, 0));
}

std::pair<double, double> ammonia_probs(const TwoStateProblem& p, double t) {
  bool ground = std::abs(p.psi0.amps(0) - Complex(1.0, 0.0)) <= kEntryTol &&
                std::abs(p.psi0.amps(1)) <= kEntryTol;
  if (!ground) return propagator_probs(p, t);
  double c = std::cos(p.A * t / p.hbar);
  double s = std::sin(p.A * t / p.hbar);
  return {c * c, s * s};
}

std::pair<double, double> propagator_probs(const TwoStateProblem& p, double t) {
  Matrix h(2, 2);
  h << Complex(p.E, 0), Complex(-p.A, 0), Complex(-p.A, 0), Complex(p.E, 0);
  UnitaryOp u = matrix_exponential_evolution(HermitianOp::from(h), t, p.hbar);
  StateVector psi = evolve(u, p.psi0);
  return {std::norm(psi.amps(0)), std::norm(psi.amps(1))};
}

std::pair<double, double> stationary_probs(double /*E1*/, double /*E2*/,
                                           Complex a, Complex b, double /*t*/) {
  double n2 = std::norm(a) + std::norm(b);
  if (std::abs(n2 - 1.0) > kNormRejectTol)
    fail("NotNormalized", "|a|^2 + |b|^2 must be 1");
  // e^{-i E_k t / hbar} factors drop out of the squared moduli.
  return {std::norm(a), std::norm(b)};
}

}  // namespace qlab
