#pragma once

// Qbit construction, the (omega, phi, delta) angle coding, cbit
// identification, measurement probabilities and repeated-sampling
// statistics.

#include "qlab/hilbert.hpp"

#include <cstdint>
#include <utility>

namespace qlab {

struct Qbit {
  Complex alpha;  // amplitude of t = (1, 0)
  Complex beta;   // amplitude of f = (0, 1)

  StateVector state() const;
};

enum class CbitClass { classical_one, classical_zero, nonclassical };

// Rejects amplitudes with |alpha|^2 + |beta|^2 off unity by more than 1e-9.
Qbit make_qbit(Complex alpha, Complex beta);

// (alpha, beta) = e^{i phi} (sin omega, e^{i delta} cos omega);
// normalized by construction for any angles.
Qbit code_qbit(double omega, double phi, double delta);

CbitClass classify(const Qbit& q);

// (P_t, P_f) = (|alpha|^2, |beta|^2).
std::pair<double, double> measure_probs(const Qbit& q);

struct SampleCounts {
  std::uint64_t count_t = 0;
  std::uint64_t count_f = 0;
};

// n independent Bernoulli(P_t) draws from a counter-based splitmix64 stream;
// the seed fully determines the counts at any thread count.
SampleCounts sample_measurements(const Qbit& q, std::uint64_t n,
                                 std::uint64_t seed);
SampleCounts sample_measurements_serial(const Qbit& q, std::uint64_t n,
                                        std::uint64_t seed);

bool ray_equal(const Qbit& a, const Qbit& b, double tol = 1e-9);

// h* = (t + f)/sqrt(2), the fixed point of the diagonalization operator.
Qbit halting_fixed_point();

}  // namespace qlab
