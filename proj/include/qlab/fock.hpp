#pragma once

// Truncated multimode Fock space: bosonic ladder operators with sqrt(N)
// factors, fermionic operators with Pauli exclusion and parity signs, and
// the no-cloning analysis comparing a linear amplifier to the exact qbit
// square.

#include "qlab/hilbert.hpp"

#include <map>
#include <vector>

namespace qlab {

enum class Statistics { boson, fermion };

using Occupancy = std::vector<int>;  // occupation numbers by mode index

struct FockState {
  Statistics statistics = Statistics::boson;
  int num_modes = 0;
  int cutoff = 8;  // max bosonic occupancy per mode
  std::map<Occupancy, Complex> terms;

  double norm() const;
  bool is_zero() const { return terms.empty(); }
  FockState& prune(double eps = 1e-15);
  FockState& scale(Complex factor);
  FockState& add(const FockState& other, Complex factor = 1.0);

  static FockState vacuum(Statistics s, int num_modes, int cutoff = 8);
};

// a_j with the sqrt(N_j) factor; a_j |0> is the zero vector.
FockState annihilate(int mode, const FockState& s);

// a_j^dag with sqrt(N_j + 1); errors at the bosonic cutoff, fermionic
// double creation yields the zero vector.
FockState create(int mode, const FockState& s);

// Product of (a_i^dag)^{N_i} / sqrt(N_i!) applied to the vacuum: a single
// normalized basis ket.
FockState build_fock(const Occupancy& occ, Statistics st, int cutoff = 8);

// max over kets with all occupancies < cutoff of
// ||([a_i, a_j^dag] - delta_ij) ket||.
double commutator_defect(int i, int j, int cutoff);

// Fermionic counterpart with the anti-commutator.
double anti_commutator_defect(int i, int j, int num_modes);

struct CloningReport {
  Complex alpha, beta;
  FockState true_copy;  // normalized (alpha a_2^dag + beta a_1^dag)^2 |0>
  double defect = 0.0;  // component outside the amplifier-reachable span
};

// defect = sqrt(2) |alpha beta|: zero exactly when the qbit is classical.
CloningReport cloning_analysis(Complex alpha, Complex beta);

}  // namespace qlab
