#pragma once

// The concrete prefix-free toy quantum machine: 2-bit opcodes over k output
// registers plus a halting register, with a syntactic HALT terminator that
// makes the program domain prefix-free by construction.
//
// Every amplitude the machine can produce lies in Z[zeta]/2^e with
// zeta = exp(i pi/4), so register states, ray identities and halting
// amplitudes are carried exactly; sums over programs are then independent
// of evaluation order by construction.

#include "qlab/qbit.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

// c0 + c1 z + c2 z^2 + c3 z^3 with z^4 = -1.
struct Zeta8 {
  std::array<std::int64_t, 4> c{};

  static Zeta8 integer(std::int64_t v) { return {{v, 0, 0, 0}}; }
  bool is_zero() const { return !c[0] && !c[1] && !c[2] && !c[3]; }
  bool all_even() const {
    return !(c[0] & 1) && !(c[1] & 1) && !(c[2] & 1) && !(c[3] & 1);
  }
  Zeta8 half() const { return {{c[0] / 2, c[1] / 2, c[2] / 2, c[3] / 2}}; }
  Zeta8 conj() const { return {{c[0], -c[3], -c[2], -c[1]}}; }
  Complex to_complex() const;

  friend Zeta8 operator+(const Zeta8& a, const Zeta8& b);
  friend Zeta8 operator-(const Zeta8& a, const Zeta8& b);
  friend Zeta8 operator*(const Zeta8& a, const Zeta8& b);
  bool operator==(const Zeta8&) const = default;
};

// value = num / 2^exp, exp >= 0; canonical unless num is zero with exp 0.
struct ExactAmp {
  Zeta8 num{};
  int exp = 0;

  static ExactAmp zero() { return {}; }
  static ExactAmp one() { return {Zeta8::integer(1), 0}; }
  static ExactAmp dyadic(int e) { return {Zeta8::integer(1), e}; }

  void normalize();
  ExactAmp conj() const { return {num.conj(), exp}; }
  Complex to_complex() const;

  friend ExactAmp operator+(const ExactAmp& a, const ExactAmp& b);
  friend ExactAmp operator*(const ExactAmp& a, const ExactAmp& b);
  bool operator==(const ExactAmp&) const = default;
};

struct ExactQbit {
  ExactAmp a0, a1;
  Qbit to_qbit() const { return {a0.to_complex(), a1.to_complex()}; }
};

// Exact projective identity of a unit-norm register state: the invariants
// (|a0|^2, |a1|^2, a0 conj(a1)) over a jointly reduced power-of-two
// denominator.  Equal keys <=> equal rays, with no tolerance involved.
struct RayKey {
  std::array<Zeta8, 3> inv{};
  int exp = 0;
  bool operator==(const RayKey&) const = default;
};

struct RayKeyHash {
  std::size_t operator()(const RayKey& k) const;
};

RayKey ray_key(const ExactQbit& q);

// sqrt_not' and the pi/4 phase gate with their adjoints, applied exactly.
void apply_gate_a(ExactQbit& q);
void apply_gate_b(ExactQbit& q);
void apply_gate_a_adj(ExactQbit& q);
void apply_gate_b_adj(ExactQbit& q);

// Binary program of even length; the final opcode is 11 (HALT) and 11
// occurs at no earlier even offset, which makes the domain prefix-free.
struct Program {
  std::string bits;

  int length() const { return static_cast<int>(bits.size()); }
  std::vector<int> opcodes() const;

  static bool valid(const std::string& bits);
  static Program from_bits(std::string bits);
};

// All valid programs with |p| <= max_len, shortest first and lexicographic
// within each length (the canonical summation order).
std::vector<Program> enumerate_programs(int max_len);

// Opcode meanings: 0 -> sqrt_not' on the target register, 1 -> phase pi/4,
// 2 -> advance the target cyclically over [out_1 .. out_k, halt]; opcode 11
// always halts.  opcode_map permutes {0,1,2} so re-coded machine variants
// can be compared against the standard one.
struct MachineModel {
  int k = 2;
  long tau_max = 0;  // step budget; 0 = unbounded (programs are finite)
  std::array<int, 3> opcode_map{0, 1, 2};

  static MachineModel standard(int k = 2);
  static MachineModel remapped_variant();  // k = 1, gate/advance swapped
};

struct MachineState {
  std::vector<ExactQbit> regs;  // k output registers, halting register last
  int target = 0;

  static MachineState initial(const MachineModel& m);
};

struct MachineOutput {
  std::vector<Qbit> output_states;
  Complex halting_amplitude;  // (t, C(p))
  ExactAmp halting_amp_exact;
  std::vector<RayKey> output_keys;
  std::vector<ExactQbit> exact_regs;  // outputs then halting register
};

MachineState run_to_state(const Program& p, const MachineModel& m,
                          MachineState start);
MachineOutput output_of(const MachineState& s, const MachineModel& m);
MachineOutput run(const Program& p, const MachineModel& m);

}  // namespace qlab
