#include "qlab/machine.hpp"

#include "qlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace qlab {

namespace {

const double kSqrtHalf = std::sqrt(0.5);

// coordinates of 1, zeta, zeta^2, zeta^3 in the complex plane
const Complex kZetaPow[4] = {
    {1.0, 0.0}, {kSqrtHalf, kSqrtHalf}, {0.0, 1.0}, {-kSqrtHalf, kSqrtHalf}};

const Zeta8 kOnePlusI{{1, 0, 1, 0}};
const Zeta8 kOneMinusI{{1, 0, -1, 0}};
const Zeta8 kZeta{{0, 1, 0, 0}};
const Zeta8 kZetaConj{{0, 0, 0, -1}};

}  // namespace

Complex Zeta8::to_complex() const {
  Complex z = 0.0;
  for (int i = 0; i < 4; ++i) z += static_cast<double>(c[i]) * kZetaPow[i];
  return z;
}

Zeta8 operator+(const Zeta8& a, const Zeta8& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
}

Zeta8 operator-(const Zeta8& a, const Zeta8& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
}

Zeta8 operator*(const Zeta8& a, const Zeta8& b) {
  Zeta8 r;
  for (int i = 0; i < 4; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < 4; ++j) {
      int k = i + j;
      std::int64_t v = a.c[i] * b.c[j];
      if (k >= 4)
        r.c[k - 4] -= v;  // z^4 = -1
      else
        r.c[k] += v;
    }
  }
  return r;
}

void ExactAmp::normalize() {
  if (num.is_zero()) {
    exp = 0;
    return;
  }
  while (exp > 0 && num.all_even()) {
    num = num.half();
    --exp;
  }
}

Complex ExactAmp::to_complex() const {
  return num.to_complex() * std::ldexp(1.0, -exp);
}

ExactAmp operator+(const ExactAmp& a, const ExactAmp& b) {
  ExactAmp r;
  r.exp = std::max(a.exp, b.exp);
  Zeta8 na = a.num, nb = b.num;
  for (int i = 0; i < 4; ++i) {
    na.c[i] <<= (r.exp - a.exp);
    nb.c[i] <<= (r.exp - b.exp);
  }
  r.num = na + nb;
  r.normalize();
  return r;
}

ExactAmp operator*(const ExactAmp& a, const ExactAmp& b) {
  ExactAmp r{a.num * b.num, a.exp + b.exp};
  r.normalize();
  return r;
}

std::size_t RayKeyHash::operator()(const RayKey& k) const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const auto& z : k.inv)
    for (std::int64_t c : z.c) mix(static_cast<std::uint64_t>(c));
  mix(static_cast<std::uint64_t>(k.exp));
  return static_cast<std::size_t>(h);
}

RayKey ray_key(const ExactQbit& q) {
  ExactAmp u = q.a0 * q.a0.conj();
  ExactAmp v = q.a1 * q.a1.conj();
  ExactAmp w = q.a0 * q.a1.conj();

  RayKey key;
  key.exp = std::max({u.exp, v.exp, w.exp});
  std::array<ExactAmp*, 3> parts{&u, &v, &w};
  for (int i = 0; i < 3; ++i) {
    Zeta8 n = parts[i]->num;
    for (int d = 0; d < 4; ++d) n.c[d] <<= (key.exp - parts[i]->exp);
    key.inv[i] = n;
  }
  while (key.exp > 0 && key.inv[0].all_even() && key.inv[1].all_even() &&
         key.inv[2].all_even()) {
    for (auto& z : key.inv) z = z.half();
    --key.exp;
  }
  return key;
}

void apply_gate_a(ExactQbit& q) {
  const ExactAmp hp{kOnePlusI, 1};   // (1+i)/2
  const ExactAmp hm{kOneMinusI, 1};  // (1-i)/2
  ExactAmp a0 = q.a0 * hp + q.a1 * hm;
  ExactAmp a1 = q.a0 * hm + q.a1 * hp;
  q = {a0, a1};
}

void apply_gate_b(ExactQbit& q) { q.a1 = q.a1 * ExactAmp{kZeta, 0}; }

void apply_gate_a_adj(ExactQbit& q) {
  const ExactAmp hp{kOnePlusI, 1};
  const ExactAmp hm{kOneMinusI, 1};
  ExactAmp a0 = q.a0 * hm + q.a1 * hp;
  ExactAmp a1 = q.a0 * hp + q.a1 * hm;
  q = {a0, a1};
}

void apply_gate_b_adj(ExactQbit& q) { q.a1 = q.a1 * ExactAmp{kZetaConj, 0}; }

std::vector<int> Program::opcodes() const {
  std::vector<int> ops;
  ops.reserve(bits.size() / 2);
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2)
    ops.push_back((bits[i] - '0') * 2 + (bits[i + 1] - '0'));
  return ops;
}

bool Program::valid(const std::string& bits) {
  if (bits.size() < 2 || bits.size() % 2 != 0) return false;
  for (char c : bits)
    if (c != '0' && c != '1') return false;
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    bool is_halt = bits[i] == '1' && bits[i + 1] == '1';
    bool is_last = i + 2 == bits.size();
    if (is_halt != is_last) return false;
  }
  return true;
}

Program Program::from_bits(std::string bits) {
  if (!valid(bits)) fail("InvalidProgram", "'" + bits + "' is not a valid program");
  return {std::move(bits)};
}

std::vector<Program> enumerate_programs(int max_len) {
  if (max_len < 2 || max_len % 2 != 0)
    fail("InvalidArgument", "max_len must be a positive even integer");
  if (max_len > 26)
    fail("InvalidArgument", "max_len above 26 is not supported");

  static const char* kOpBits[3] = {"00", "01", "10"};
  std::vector<Program> out;
  for (int len = 2; len <= max_len; len += 2) {
    int m = len / 2 - 1;  // non-halt opcodes before the terminator
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= 3;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::string bits;
      bits.reserve(len);
      // base-3 digits, most significant first: ascending idx is
      // lexicographic order on the bit strings
      std::uint64_t rem = idx;
      std::uint64_t place = count / 3;
      for (int d = 0; d < m; ++d) {
        bits += kOpBits[(rem / std::max<std::uint64_t>(place, 1)) % 3];
        rem %= std::max<std::uint64_t>(place, 1);
        place /= 3;
      }
      bits += "11";
      out.push_back({std::move(bits)});
    }
  }
  return out;
}

MachineModel MachineModel::standard(int k) {
  if (k < 1) fail("InvalidArgument", "machine needs at least one output register");
  MachineModel m;
  m.k = k;
  return m;
}

MachineModel MachineModel::remapped_variant() {
  MachineModel m;
  m.k = 1;
  m.opcode_map = {2, 1, 0};
  return m;
}

MachineState MachineState::initial(const MachineModel& m) {
  MachineState s;
  // outputs |0>; halting register (t + f)/sqrt(2) = h*
  const ExactAmp sqrt_half{{{0, 1, 0, -1}}, 1};  // (z - z^3)/2
  s.regs.assign(m.k + 1, ExactQbit{ExactAmp::one(), ExactAmp::zero()});
  s.regs[m.k] = ExactQbit{sqrt_half, sqrt_half};
  s.target = 0;
  return s;
}

MachineState run_to_state(const Program& p, const MachineModel& m,
                          MachineState start) {
  if (start.regs.size() != static_cast<std::size_t>(m.k + 1))
    fail("DimensionMismatch", "machine state does not match the register count");
  long steps = 0;
  for (int op : p.opcodes()) {
    if (m.tau_max > 0 && ++steps > m.tau_max)
      fail("StepBudgetExceeded", "program exceeds the machine's step budget");
    if (op == 3) break;
    switch (m.opcode_map[op]) {
      case 0:
        apply_gate_a(start.regs[start.target]);
        break;
      case 1:
        apply_gate_b(start.regs[start.target]);
        break;
      default:
        start.target = (start.target + 1) % (m.k + 1);
        break;
    }
  }
  return start;
}

MachineOutput output_of(const MachineState& s, const MachineModel& m) {
  if (s.regs.size() != static_cast<std::size_t>(m.k + 1))
    fail("DimensionMismatch", "machine state does not match the register count");
  MachineOutput out;
  out.exact_regs = s.regs;
  for (int r = 0; r < m.k; ++r) {
    out.output_states.push_back(s.regs[r].to_qbit());
    out.output_keys.push_back(ray_key(s.regs[r]));
  }
  // (t, C(p)) with the inner product linear in its first argument
  out.halting_amp_exact = s.regs[m.k].a0.conj();
  out.halting_amplitude = out.halting_amp_exact.to_complex();
  return out;
}

MachineOutput run(const Program& p, const MachineModel& m) {
  return output_of(run_to_state(p, m, MachineState::initial(m)), m);
}

}  // namespace qlab
