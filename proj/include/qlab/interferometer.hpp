#pragma once

// Compilation of netlists to single-particle mode-space maps by successive
// substitution, Mach-Zehnder analysis, and the universal two-port devices
// T^bs / T^MZ with their parameter correspondences.

#include "qlab/netlist.hpp"
#include "qlab/u2.hpp"

#include <map>
#include <utility>

namespace qlab {

// The mirror's reflection factor i is omitted by default; 'exact'
// reinstates it for checks against full quantum-optics conventions.
enum class MirrorPhase { omit, exact };

struct CompiledCircuit {
  // Free input ports (modes first read before ever being written) and the
  // modes still live after the last element, both in declaration order.
  std::vector<std::string> input_modes;
  std::vector<std::string> output_modes;
  // map(out, in); columns orthonormal within 1e-10, unitary when square.
  Matrix map;
  // |amplitude|^2 per detector label for a unit amplitude injected at the
  // source mode; filled when the circuit declares exactly one source.
  std::map<std::string, double> detector_probs;

  int input_index(const std::string& mode) const;
  int output_index(const std::string& mode) const;
};

// Rejects downconvert/upconvert/amplify (NonUnitaryElement) and wiring that
// reuses a consumed mode or fails the final isometry check
// (NonUnitaryComposition).
CompiledCircuit compile(const Circuit& c, MirrorPhase mp = MirrorPhase::omit);

// (cos^2(phi/2), sin^2(phi/2)); cross-checked against the compiled built-in
// Mach-Zehnder circuit on every call.
std::pair<double, double> mz_probabilities(double phi);

enum class TwoPortFlavor { bs, mz };

struct TwoPortParams {
  double omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;
  TwoPortFlavor flavor = TwoPortFlavor::bs;
};

// T^bs(omega, alpha, beta, phi): beam splitter followed by a phase shifter.
Eigen::Matrix2cd t_bs(const TwoPortParams& p);

// T^MZ(alpha, beta, omega, phi): rotated Mach-Zehnder with four shifters.
Eigen::Matrix2cd t_mz(const TwoPortParams& p);

// T^bs(w,a,b,f) = T^MZ(a - pi/2, b - w, 2w, f - pi/2).
TwoPortParams bs_to_mz(const TwoPortParams& p);

// Parameters with t_bs(result) equal to the canonical form u2_matrix(p).
TwoPortParams canonical_to_bs(const U2Params& p);

struct GateRealization {
  TwoPortParams bs;
  TwoPortParams mz;
};

// The explicit device parameters realizing the unary gate catalog.
GateRealization gate_realization(GateName name);

}  // namespace qlab
