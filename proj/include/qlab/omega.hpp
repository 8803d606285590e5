#pragma once

// Halting amplitudes Omega and Upsilon(s), incoherent probabilities,
// program-size complexity H(s) with canonical programs, conditional
// complexity, and the measured O(1) constants of the inequality list.

#include "qlab/machine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qlab {

struct OmegaAccumulator {
  Complex omega;        // sum 2^{-|p|/2} (t, C(p)), canonical program order
  double omega_sq = 0;  // sum 2^{-|p|} |(t, C(p))|^2 (incoherent)
  double kraft = 0;     // sum 2^{-|p|}
  int max_len = 0;
};

// Terms are accumulated exactly in Z[zeta]/2^e, so the parallel kernel and
// the serial reference are bit-identical at any thread count.
OmegaAccumulator omega(const MachineModel& m, int max_len);
OmegaAccumulator omega_serial(const MachineModel& m, int max_len);

// One machine output per program; the parallel batch runner behind omega().
std::vector<MachineOutput> run_programs(const std::vector<Program>& programs,
                                        const MachineModel& m);

// Halting amplitude restricted to programs whose output matches s
// register-by-register (ray equality within tol).
Complex upsilon(const std::vector<Qbit>& s, const MachineModel& m, int max_len,
                double tol = 1e-9);

struct OutputClass {
  std::vector<Qbit> states;      // representative output tuple
  std::vector<RayKey> keys;
  double prob = 0.0;             // P(s)
  int h = 0;                     // H(s) in bits
  Program canonical;
};

struct ProbabilityReport {
  std::vector<OutputClass> classes;               // first-reached order
  std::vector<std::vector<int>> orthogonal_sets;  // class indices, mutually
                                                  // orthogonal output sets
  std::vector<double> set_probs;                  // P(S) per set
  double omega_sq = 0.0;
  bool chain_ok = false;  // 0 <= P(s) <= P(S) <= omega_sq <= 1 everywhere
};

ProbabilityReport probabilities(const MachineModel& m, int max_len);

struct ComplexityResult {
  std::optional<int> h;               // bits; empty = unreachable (infinite)
  std::optional<Program> canonical;   // lexicographically first minimal
};

// exact_phase=true demands plain vector equality instead of ray equality.
ComplexityResult complexity(const std::vector<Qbit>& s, const MachineModel& m,
                            int max_len, double tol = 1e-9,
                            bool exact_phase = false);

// H(s|t): shortest p such that running t's canonical program and then p
// leaves the machine with output s; errors when t is unreachable.
ComplexityResult conditional_complexity(const std::vector<Qbit>& s,
                                        const std::vector<Qbit>& t,
                                        const MachineModel& m, int max_len,
                                        double tol = 1e-9);

struct InequalityEntry {
  std::string relation;
  long slack = 0;  // maximum measured slack, bits
  long pairs = 0;  // object pairs inspected
};

struct WitnessSet {
  int h_set = 0;         // H(S) for S = {low, high}
  int h_max_member = 0;  // max H(s_i) over the members
  Qbit low, high;        // out_1 representatives
};

struct InequalityReport {
  std::vector<InequalityEntry> entries;
  long machine_independence = 0;  // max |H_C - H_C'| over common outputs
  long common_outputs = 0;
  std::optional<WitnessSet> witness;  // H(S) < max H(s_i), when found
};

// Single objects live in register out_1 (projected); joint objects use
// out_1 and out_2 of the same run.  Conditional distances are found by an
// exact bidirectional search over gate words, so they stay meaningful past
// the enumeration horizon.
InequalityReport inequality_report(const MachineModel& m, int max_len);

// Minimal gate-word length taking `from` onto the ray of `to`: exact
// bidirectional breadth-first search over {sqrt_not', phase} words, looking
// half_depth levels out from each side.
std::optional<int> gate_distance(const ExactQbit& from, const ExactQbit& to,
                                 int half_depth);

}  // namespace qlab
