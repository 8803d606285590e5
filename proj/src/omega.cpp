#include "qlab/omega.hpp"

#include "qlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace qlab {

namespace {

struct ExactAccumulator {
  ExactAmp omega, omega_sq, kraft;

  void add(const Program& p, const MachineOutput& out) {
    const int len = p.length();
    omega = omega + ExactAmp::dyadic(len / 2) * out.halting_amp_exact;
    omega_sq = omega_sq + ExactAmp::dyadic(len) *
                              (out.halting_amp_exact * out.halting_amp_exact.conj());
    kraft = kraft + ExactAmp::dyadic(len);
  }

  OmegaAccumulator to_doubles(int max_len) const {
    OmegaAccumulator acc;
    acc.omega = omega.to_complex();
    acc.omega_sq = omega_sq.to_complex().real();
    acc.kraft = kraft.to_complex().real();
    acc.max_len = max_len;
    return acc;
  }
};

bool outputs_match(const MachineOutput& out, const std::vector<Qbit>& s,
                   double tol, bool exact_phase) {
  if (out.output_states.size() != s.size()) return false;
  for (std::size_t r = 0; r < s.size(); ++r) {
    const Qbit& a = out.output_states[r];
    const Qbit& b = s[r];
    if (exact_phase) {
      if (std::abs(a.alpha - b.alpha) > tol || std::abs(a.beta - b.beta) > tol)
        return false;
    } else if (!ray_equal(a, b, tol)) {
      return false;
    }
  }
  return true;
}

// exact inner product of two register states; orthogonality is exact
bool registers_orthogonal(const ExactQbit& a, const ExactQbit& b) {
  ExactAmp ip = a.a0 * b.a0.conj() + a.a1 * b.a1.conj();
  return ip.num.is_zero();
}

bool outputs_orthogonal(const std::vector<ExactQbit>& a,
                        const std::vector<ExactQbit>& b, int k) {
  // joint states are tensor products: orthogonal iff some factor is
  for (int r = 0; r < k; ++r)
    if (registers_orthogonal(a[r], b[r])) return true;
  return false;
}

struct VecKeyHash {
  std::size_t operator()(const std::vector<RayKey>& keys) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    RayKeyHash inner;
    for (const auto& k : keys) h = h * 1099511628211ULL ^ inner(k);
    return h;
  }
};

struct SingleClass {
  RayKey key;
  int h = 0;
  ExactQbit state;  // exact out_1 state after the canonical program
  Qbit repr;
};

}  // namespace

std::optional<int> gate_distance(const ExactQbit& from, const ExactQbit& to,
                                 int half_depth) {
  using Map = std::unordered_map<RayKey, int, RayKeyHash>;
  std::optional<int> best;

  auto expand = [&best](Map& dist, const Map& other,
                        std::vector<ExactQbit>& frontier, int depth,
                        bool adjoint) {
    std::vector<ExactQbit> next;
    for (const ExactQbit& q : frontier) {
      for (int g = 0; g < 2; ++g) {
        ExactQbit n = q;
        if (!adjoint)
          g == 0 ? apply_gate_a(n) : apply_gate_b(n);
        else
          g == 0 ? apply_gate_a_adj(n) : apply_gate_b_adj(n);
        RayKey key = ray_key(n);
        if (!dist.emplace(key, depth).second) continue;
        auto it = other.find(key);
        if (it != other.end()) {
          int total = depth + it->second;
          if (!best || total < *best) best = total;
        }
        next.push_back(std::move(n));
      }
    }
    frontier = std::move(next);
  };

  Map fwd, bwd;
  std::vector<ExactQbit> ffront{from}, bfront{to};
  fwd.emplace(ray_key(from), 0);
  bwd.emplace(ray_key(to), 0);
  if (ray_key(from) == ray_key(to)) return 0;

  for (int d = 1; d <= half_depth; ++d) {
    expand(fwd, bwd, ffront, d, false);
    expand(bwd, fwd, bfront, d, true);
    // any meet not seen yet involves a key first reached past level d on
    // one side, so its total is at least d + 1
    if (best && *best <= d + 1) break;
  }
  return best;
}

std::vector<MachineOutput> run_programs(const std::vector<Program>& programs,
                                        const MachineModel& m) {
  std::vector<MachineOutput> out(programs.size());
  const std::int64_t n = static_cast<std::int64_t>(programs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = run(programs[i], m);
  return out;
}

namespace {

// Runs programs in parallel chunks of bounded memory and hands the outputs
// to `sink` serially in canonical program order.
template <typename Sink>
void for_each_output(const std::vector<Program>& programs, const MachineModel& m,
                     Sink&& sink) {
  constexpr std::size_t kChunk = 1 << 15;
  std::vector<MachineOutput> buffer;
  for (std::size_t base = 0; base < programs.size(); base += kChunk) {
    const std::size_t count = std::min(kChunk, programs.size() - base);
    buffer.assign(count, MachineOutput{});
    const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      buffer[i] = run(programs[base + i], m);
    for (std::size_t i = 0; i < count; ++i) sink(base + i, buffer[i]);
  }
}

}  // namespace

OmegaAccumulator omega_serial(const MachineModel& m, int max_len) {
  ExactAccumulator acc;
  for (const Program& p : enumerate_programs(max_len)) acc.add(p, run(p, m));
  return acc.to_doubles(max_len);
}

OmegaAccumulator omega(const MachineModel& m, int max_len) {
  std::vector<Program> programs = enumerate_programs(max_len);
  ExactAccumulator acc;
  for_each_output(programs, m, [&](std::size_t i, const MachineOutput& out) {
    acc.add(programs[i], out);
  });
  return acc.to_doubles(max_len);
}

Complex upsilon(const std::vector<Qbit>& s, const MachineModel& m, int max_len,
                double tol) {
  if (static_cast<int>(s.size()) != m.k)
    fail("DimensionMismatch", "output specification must list k register states");
  std::vector<Program> programs = enumerate_programs(max_len);
  ExactAmp sum;
  for_each_output(programs, m, [&](std::size_t i, const MachineOutput& out) {
    if (!outputs_match(out, s, tol, false)) return;
    sum = sum + ExactAmp::dyadic(programs[i].length() / 2) * out.halting_amp_exact;
  });
  return sum.to_complex();
}

ProbabilityReport probabilities(const MachineModel& m, int max_len) {
  std::vector<Program> programs = enumerate_programs(max_len);

  ProbabilityReport report;
  std::unordered_map<std::vector<RayKey>, int, VecKeyHash> index;
  std::vector<ExactAmp> probs;
  std::vector<std::vector<ExactQbit>> exact_states;
  ExactAccumulator total;

  for_each_output(programs, m, [&](std::size_t i, const MachineOutput& out) {
    total.add(programs[i], out);
    auto [it, fresh] =
        index.emplace(out.output_keys, static_cast<int>(report.classes.size()));
    if (fresh) {
      OutputClass cls;
      cls.states = out.output_states;
      cls.keys = out.output_keys;
      cls.h = programs[i].length();
      cls.canonical = programs[i];
      report.classes.push_back(std::move(cls));
      probs.push_back(ExactAmp::zero());
      exact_states.push_back(out.exact_regs);
    }
    probs[it->second] =
        probs[it->second] + ExactAmp::dyadic(programs[i].length()) *
                                (out.halting_amp_exact * out.halting_amp_exact.conj());
  });

  for (std::size_t c = 0; c < probs.size(); ++c)
    report.classes[c].prob = probs[c].to_complex().real();
  report.omega_sq = total.omega_sq.to_complex().real();

  // greedy partition into mutually orthogonal output sets, canonical order
  std::vector<bool> assigned(report.classes.size(), false);
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<int> set{static_cast<int>(i)};
    assigned[i] = true;
    for (std::size_t j = i + 1; j < report.classes.size(); ++j) {
      if (assigned[j]) continue;
      bool ok = true;
      for (int member : set)
        if (!outputs_orthogonal(exact_states[member], exact_states[j], m.k)) {
          ok = false;
          break;
        }
      if (ok) {
        set.push_back(static_cast<int>(j));
        assigned[j] = true;
      }
    }
    double p_set = 0.0;
    for (int member : set) p_set += report.classes[member].prob;
    report.orthogonal_sets.push_back(std::move(set));
    report.set_probs.push_back(p_set);
  }

  report.chain_ok = report.omega_sq <= 1.0 + 1e-12;
  for (std::size_t si = 0; si < report.orthogonal_sets.size(); ++si) {
    if (report.set_probs[si] > report.omega_sq + 1e-12) report.chain_ok = false;
    for (int member : report.orthogonal_sets[si]) {
      double p = report.classes[member].prob;
      if (p < -1e-15 || p > report.set_probs[si] + 1e-12) report.chain_ok = false;
    }
  }
  return report;
}

ComplexityResult complexity(const std::vector<Qbit>& s, const MachineModel& m,
                            int max_len, double tol, bool exact_phase) {
  if (static_cast<int>(s.size()) != m.k)
    fail("DimensionMismatch", "output specification must list k register states");
  // enumeration order is shortest-first and lexicographic, so the first
  // match is the canonical program
  for (const Program& p : enumerate_programs(max_len)) {
    if (outputs_match(run(p, m), s, tol, exact_phase)) return {p.length(), p};
  }
  return {std::nullopt, std::nullopt};
}

ComplexityResult conditional_complexity(const std::vector<Qbit>& s,
                                        const std::vector<Qbit>& t,
                                        const MachineModel& m, int max_len,
                                        double tol) {
  ComplexityResult t_star = complexity(t, m, max_len, tol);
  if (!t_star.h)
    fail("Unreachable", "conditioning output is not reachable within max_len");
  MachineState base =
      run_to_state(*t_star.canonical, m, MachineState::initial(m));
  for (const Program& p : enumerate_programs(max_len)) {
    MachineOutput out = output_of(run_to_state(p, m, base), m);
    if (outputs_match(out, s, tol, false)) return {p.length(), p};
  }
  return {std::nullopt, std::nullopt};
}

InequalityReport inequality_report(const MachineModel& m, int max_len) {
  std::vector<Program> programs = enumerate_programs(max_len);

  // projected single objects on out_1, first-reached (canonical) order
  std::vector<SingleClass> singles;
  std::unordered_map<RayKey, int, RayKeyHash> single_index;
  // joint objects (out_1, out_2)
  std::unordered_map<std::vector<RayKey>, int, VecKeyHash> joint_h;

  for_each_output(programs, m, [&](std::size_t i, const MachineOutput& out) {
    const RayKey& key = out.output_keys[0];
    if (single_index.emplace(key, static_cast<int>(singles.size())).second)
      singles.push_back(
          {key, programs[i].length(), out.exact_regs[0], out.output_states[0]});
    if (m.k >= 2) {
      std::vector<RayKey> jk{out.output_keys[0], out.output_keys[1]};
      joint_h.emplace(std::move(jk), programs[i].length());
    }
  });

  auto single_h = [&](const RayKey& key) {
    return singles[single_index.at(key)].h;
  };

  InequalityReport report;
  const int gate_budget = max_len / 2 - 1;
  const int half_depth = std::min(4 * std::max(gate_budget, 1), 16);

  // H(s|t) for every ordered pair of reachable single objects
  std::vector<std::vector<int>> cond(singles.size(),
                                     std::vector<int>(singles.size(), 0));
  for (std::size_t ti = 0; ti < singles.size(); ++ti) {
    for (std::size_t si = 0; si < singles.size(); ++si) {
      auto d = gate_distance(singles[ti].state, singles[si].state, half_depth);
      if (!d)
        fail("SearchExhausted",
             "conditional search exceeded its depth budget; raise it for "
             "this max_len");
      cond[ti][si] = 2 * *d + 2;
    }
  }

  long c_ss = 0, c_cond = std::numeric_limits<long>::min();
  for (std::size_t i = 0; i < singles.size(); ++i)
    c_ss = std::max<long>(c_ss, cond[i][i]);
  for (std::size_t ti = 0; ti < singles.size(); ++ti)
    for (std::size_t si = 0; si < singles.size(); ++si)
      c_cond = std::max<long>(c_cond, cond[ti][si] - singles[si].h);

  report.entries.push_back(
      {"H(s|s) = O(1)", c_ss, static_cast<long>(singles.size())});
  report.entries.push_back({"H(s|t) <= H(s) + O(1)", c_cond,
                            static_cast<long>(singles.size() * singles.size())});

  if (m.k >= 2) {
    long c_swap = 0, n_swap = 0;
    long c_mono = std::numeric_limits<long>::min(), n_mono = 0;
    long c_sub = std::numeric_limits<long>::min();
    long c_dup = 0, n_dup = 0;
    for (const auto& [keys, h_joint] : joint_h) {
      ++n_mono;
      const long h_s = single_h(keys[0]);
      const long h_t = single_h(keys[1]);
      c_mono = std::max(c_mono, h_s - h_joint);
      c_sub = std::max(c_sub, h_joint - h_s - h_t);
      auto swapped = joint_h.find(std::vector<RayKey>{keys[1], keys[0]});
      if (swapped != joint_h.end()) {
        ++n_swap;
        c_swap = std::max<long>(c_swap, std::abs(h_joint - swapped->second));
      }
      if (keys[0] == keys[1]) {
        ++n_dup;
        c_dup = std::max<long>(c_dup, std::abs(h_joint - h_s));
      }
    }
    report.entries.push_back({"H(s,t) = H(t,s) + O(1)", c_swap, n_swap});
    report.entries.push_back({"H(s) <= H(s,t) + O(1)", c_mono, n_mono});
    report.entries.push_back({"H(s,t) <= H(s) + H(t) + O(1)", c_sub, n_mono});
    report.entries.push_back({"H(s,s) = H(s) + O(1)", c_dup, n_dup});
  }

  // machine independence: compare against the k=1 re-coded variant
  MachineModel variant = MachineModel::remapped_variant();
  variant.tau_max = m.tau_max;
  std::unordered_map<RayKey, int, RayKeyHash> vh;
  for_each_output(programs, variant, [&](std::size_t i, const MachineOutput& out) {
    vh.emplace(out.output_keys[0], programs[i].length());
  });
  for (const SingleClass& s : singles) {
    auto it = vh.find(s.key);
    if (it == vh.end()) continue;
    ++report.common_outputs;
    report.machine_independence =
        std::max<long>(report.machine_independence, std::abs(s.h - it->second));
  }

  // witness set with H(S) below the largest member complexity
  const SingleClass* lo = nullptr;
  const SingleClass* hi = nullptr;
  for (const SingleClass& s : singles) {
    if (!lo || s.h < lo->h) lo = &s;
    if (!hi || s.h > hi->h) hi = &s;
  }
  if (lo && hi && lo->h < hi->h) {
    WitnessSet w;
    w.h_set = lo->h;  // a program reaching any member reaches S
    w.h_max_member = hi->h;
    w.low = lo->repr;
    w.high = hi->repr;
    report.witness = w;
  }
  return report;
}

}  // namespace qlab
