#pragma once

// Two-state dynamics: the stationary (diagonal Hamiltonian) case and the
// equal-diagonal / equal-off-diagonal case with oscillating transition
// probabilities, solved both in closed form and through the propagator.

#include "qlab/hilbert.hpp"

#include <utility>

namespace qlab {

struct TwoStateProblem {
  double E = 0.0;     // shared diagonal energy
  double A = 0.0;     // coupling: H = [[E, -A], [-A, E]]
  double hbar = 1.0;  // natural units by default
  StateVector psi0;   // normalized initial state, dim 2

  static TwoStateProblem make(double E, double A, double hbar,
                              StateVector psi0);
  // psi0 = (1, 0), the paper's initial condition
  static TwoStateProblem ground_start(double E, double A, double hbar = 1.0);
};

// (cos^2(At/hbar), sin^2(At/hbar)) for psi0 = (1,0); other initial states
// are routed through the propagator.
std::pair<double, double> ammonia_probs(const TwoStateProblem& p, double t);

// |psi(t)|^2 components with psi(t) = exp(-i H t / hbar) psi0.
std::pair<double, double> propagator_probs(const TwoStateProblem& p, double t);

// Diagonal Hamiltonian: stationary states, probabilities constant in time.
std::pair<double, double> stationary_probs(double E1, double E2, Complex a,
                                           Complex b, double t);

}  // namespace qlab
