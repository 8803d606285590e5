#pragma once

// The four-angle U(2) parameterization, the unary gate catalog, fixed-point
// analysis and the generalized (nonclassical) diagonalization operator.

#include "qlab/hilbert.hpp"

#include <array>
#include <string>
#include <vector>

namespace qlab {

// U(2)(omega, alpha, beta, phi) =
//   e^{-i beta} [[e^{i alpha} cos w, -e^{-i phi} sin w],
//                [e^{i phi} sin w,    e^{-i alpha} cos w]]
// with documented ranges -pi <= beta, omega <= pi and
// -pi/2 <= alpha, phi <= pi/2; the formulas are 2*pi-periodic, so inputs
// outside the ranges are accepted as-is.
struct U2Params {
  double omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;
};

enum class GateName { identity, not_gate, sqrt_not, sqrt_not_prime };

Eigen::Matrix2cd u2_matrix(const U2Params& p);

// Recovers a parameter tuple with u2_matrix(result) equal to u entrywise.
U2Params u2_params_from_matrix(const Eigen::Matrix2cd& u);

Eigen::Matrix2cd gate(GateName name);
GateName parse_gate_name(const std::string& name);
std::string gate_name_string(GateName name);

struct FixedPointReport {
  bool has_fixed_point = false;
  std::vector<StateVector> fixed_vectors;  // normalized, eigenvalue 1
  std::array<double, 2> eigenphases{};     // sorted ascending in (-pi, pi]
};

// Eigenvalue-1 detection uses |lambda - 1| <= 1e-9; the fixed-point
// predicate is discontinuous, so the threshold is part of the contract.
FixedPointReport fixed_point_report(const Eigen::Matrix2cd& u);

// [U(2)(p)]^{-1} diag(e^{i mu}, e^{i lambda}) U(2)(p); eigenphases {mu, lambda}.
Eigen::Matrix2cd generalized_diag(const U2Params& p, double mu, double lambda);

double wrap_angle(double a);  // reduce to (-pi, pi]

}  // namespace qlab
