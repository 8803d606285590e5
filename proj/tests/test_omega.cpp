#include "qlab/omega.hpp"

#include "qlab/error.hpp"
#include "qlab/u2.hpp"

#include "doctest.h"

#include <cmath>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qlab;

namespace {

std::vector<Qbit> all_zero_outputs(int k) { return std::vector<Qbit>(k, Qbit{1.0, 0.0}); }

}  // namespace

TEST_CASE("omega at max_len 2: the single program 11") {
  MachineModel m = MachineModel::standard(2);
  OmegaAccumulator acc = omega(m, 2);
  // omega = 2^{-1} (t, h*) = 1/(2 sqrt(2))
  CHECK(std::abs(acc.omega - Complex(0.5 * std::sqrt(0.5), 0)) <= 1e-15);
  CHECK(acc.kraft == 0.25);
  CHECK(acc.omega_sq == 0.125);
}

TEST_CASE("kraft and omega_sq grow monotonically and stay below 1") {
  MachineModel m = MachineModel::standard(2);
  double prev_kraft = 0.0, prev_sq = 0.0;
  for (int len : {2, 4, 6, 8, 10, 12}) {
    OmegaAccumulator acc = omega(m, len);
    CHECK(acc.kraft > prev_kraft);
    CHECK(acc.omega_sq >= prev_sq);
    CHECK(acc.kraft < 1.0);
    CHECK(acc.omega_sq <= 1.0);
    prev_kraft = acc.kraft;
    prev_sq = acc.omega_sq;
  }
  // partial Kraft sums: sum_{m<=M} 3^m 4^{-(m+1)}
  double expected = 0.0, term = 0.25;
  for (int stage = 0; stage < 6; ++stage) {
    expected += term;
    term *= 0.75;
  }
  CHECK(omega(m, 12).kraft == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("parallel and serial accumulators are bit-identical") {
  MachineModel m = MachineModel::standard(2);
  OmegaAccumulator serial = omega_serial(m, 10);
  OmegaAccumulator parallel = omega(m, 10);
  CHECK(serial.omega == parallel.omega);
  CHECK(serial.omega_sq == parallel.omega_sq);
  CHECK(serial.kraft == parallel.kraft);

#ifdef _OPENMP
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  OmegaAccumulator one = omega(m, 10);
  omp_set_num_threads(4);
  OmegaAccumulator four = omega(m, 10);
  omp_set_num_threads(saved);
  CHECK(one.omega == four.omega);
  CHECK(one.omega_sq == four.omega_sq);
  CHECK(one.kraft == four.kraft);
#endif
}

TEST_CASE("upsilon restricted to the all-zero output") {
  MachineModel m = MachineModel::standard(2);
  // the only max_len=2 program produces all-|0> outputs
  Complex u = upsilon(all_zero_outputs(2), m, 2);
  CHECK(std::abs(u - omega(m, 2).omega) <= 1e-15);

  // an output no program reaches: out_1 = |1> needs three gate opcodes
  std::vector<Qbit> unreachable{Qbit{0.0, 1.0}, Qbit{1.0, 0.0}};
  CHECK(upsilon(unreachable, m, 4) == Complex(0.0, 0.0));
}

TEST_CASE("upsilon over all realized outputs recovers omega") {
  MachineModel m = MachineModel::standard(2);
  const int max_len = 8;
  ProbabilityReport report = probabilities(m, max_len);
  Complex total = 0.0;
  for (const OutputClass& cls : report.classes)
    total += upsilon(cls.states, m, max_len);
  CHECK(std::abs(total - omega(m, max_len).omega) <= 1e-12);
}

TEST_CASE("probability chain holds at every scale") {
  MachineModel m = MachineModel::standard(2);
  for (int len : {2, 4, 6, 8}) {
    ProbabilityReport report = probabilities(m, len);
    CHECK(report.chain_ok);
    double sum = 0.0;
    for (const OutputClass& cls : report.classes) sum += cls.prob;
    CHECK(sum == doctest::Approx(report.omega_sq).epsilon(1e-14));
  }
  ProbabilityReport two = probabilities(m, 2);
  REQUIRE(two.classes.size() == 1);
  CHECK(two.classes[0].prob == 0.125);
}

TEST_CASE("complexity of pinned outputs") {
  MachineModel m = MachineModel::standard(2);

  ComplexityResult zero = complexity(all_zero_outputs(2), m, 8);
  REQUIRE(zero.h.has_value());
  CHECK(*zero.h == 2);
  CHECK(zero.canonical->bits == "11");

  Eigen::Vector2cd rotated = gate(GateName::sqrt_not_prime) * Eigen::Vector2cd(1, 0);
  std::vector<Qbit> spec{Qbit{rotated(0), rotated(1)}, Qbit{1.0, 0.0}};
  ComplexityResult one_gate = complexity(spec, m, 8);
  REQUIRE(one_gate.h.has_value());
  CHECK(*one_gate.h == 4);
  CHECK(one_gate.canonical->bits == "0011");

  // |1> on out_1 needs sqrt_not' twice: unreachable within max_len 4
  std::vector<Qbit> too_deep{Qbit{0.0, 1.0}, Qbit{1.0, 0.0}};
  CHECK(!complexity(too_deep, m, 4).h.has_value());
  ComplexityResult reachable = complexity(too_deep, m, 8);
  REQUIRE(reachable.h.has_value());
  CHECK(*reachable.h == 6);
  CHECK(reachable.canonical->bits == "000011");
}

TEST_CASE("H(s) = -log2 P*(s) exactly for reachable outputs") {
  MachineModel m = MachineModel::standard(2);
  ProbabilityReport report = probabilities(m, 8);
  for (const OutputClass& cls : report.classes) {
    double p_star = std::ldexp(1.0, -cls.h);  // 2^{-H}
    CHECK(cls.h == -static_cast<int>(std::lround(std::log2(p_star))));
    // P*(s) <= P(s) * 2^c for a finite machine constant
    CHECK(cls.prob > 0.0);
  }
  // measure the constant c with P* = 2^{-H}
  double worst = 0.0;
  for (const OutputClass& cls : report.classes)
    worst = std::max(worst, std::ldexp(1.0, -cls.h) / cls.prob);
  CHECK(std::isfinite(worst));
  CHECK(worst >= 1.0);
}

TEST_CASE("exact phase matching distinguishes phase-adorned outputs") {
  MachineModel m = MachineModel::standard(1);
  // 01 leaves |0> exactly fixed, so ray and exact matching agree there;
  // out_1 = |1> via 0000: ray-reachable, exact amplitude check still passes
  ComplexityResult ray = complexity({Qbit{0.0, 1.0}}, m, 10);
  REQUIRE(ray.h.has_value());
  CHECK(*ray.h == 6);
  ComplexityResult strict = complexity({Qbit{0.0, 1.0}}, m, 10, 1e-9, true);
  // G G |0> = not |0> = |1> exactly (sqrt_not' squares to not)
  REQUIRE(strict.h.has_value());
  CHECK(*strict.h == 6);
}

TEST_CASE("conditional complexity") {
  MachineModel m = MachineModel::standard(2);
  ComplexityResult self = conditional_complexity(all_zero_outputs(2),
                                                 all_zero_outputs(2), m, 8);
  REQUIRE(self.h.has_value());
  CHECK(*self.h == 2);  // appending the bare HALT changes nothing

  // from out_1 = sqrt_not'|0> back to all-zero: three more gates
  Eigen::Vector2cd rotated = gate(GateName::sqrt_not_prime) * Eigen::Vector2cd(1, 0);
  std::vector<Qbit> t{Qbit{rotated(0), rotated(1)}, Qbit{1.0, 0.0}};
  ComplexityResult back = conditional_complexity(all_zero_outputs(2), t, m, 8);
  REQUIRE(back.h.has_value());
  CHECK(*back.h == 8);  // G^3 restores the ray of |0>

  std::vector<Qbit> unreachable{Qbit{0.0, 1.0}, Qbit{0.0, 1.0}};
  CHECK_THROWS_AS(conditional_complexity(all_zero_outputs(2), unreachable, m, 4),
                  Error);
}

TEST_CASE("inequality report at max_len 8") {
  MachineModel m = MachineModel::standard(2);
  InequalityReport report = inequality_report(m, 8);

  REQUIRE(report.entries.size() == 6);
  for (const InequalityEntry& e : report.entries) {
    INFO(e.relation);
    CHECK(e.pairs > 0);
    CHECK(e.slack < 1000);  // finite and small
    CHECK(e.slack > -1000);
  }

  // H(s|s) is the pure continuation cost: the bare HALT
  for (const InequalityEntry& e : report.entries)
    if (e.relation == "H(s|s) = O(1)") CHECK(e.slack == 2);

  // joint monotonicity can never be violated on this machine
  for (const InequalityEntry& e : report.entries)
    if (e.relation == "H(s) <= H(s,t) + O(1)") CHECK(e.slack <= 0);

  CHECK(report.common_outputs > 0);
  CHECK(report.machine_independence >= 0);
  CHECK(report.machine_independence < 1000);

  REQUIRE(report.witness.has_value());
  CHECK(report.witness->h_set < report.witness->h_max_member);
  CHECK(report.witness->h_set == 2);
}

TEST_CASE("inequality report is reproducible across thread counts") {
  MachineModel m = MachineModel::standard(2);
  auto snapshot = [&] {
    InequalityReport r = inequality_report(m, 6);
    std::string repr;
    for (const InequalityEntry& e : r.entries)
      repr += e.relation + ":" + std::to_string(e.slack) + "/" +
              std::to_string(e.pairs) + ";";
    repr += "mi=" + std::to_string(r.machine_independence);
    repr += ",common=" + std::to_string(r.common_outputs);
    if (r.witness)
      repr += ",w=" + std::to_string(r.witness->h_set) + "<" +
              std::to_string(r.witness->h_max_member);
    return repr;
  };
#ifdef _OPENMP
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  std::string one = snapshot();
  omp_set_num_threads(3);
  std::string three = snapshot();
  omp_set_num_threads(saved);
  CHECK(one == three);
#else
  CHECK(snapshot() == snapshot());
#endif
}

TEST_CASE("bidirectional gate search agrees with exhaustive continuation search") {
  MachineModel m = MachineModel::standard(2);
  std::vector<Program> programs = enumerate_programs(8);
  std::vector<MachineOutput> outputs = run_programs(programs, m);

  // first-seen out_1 classes; their canonical programs are pure gate words,
  // so the stored tuples all carry out_2 = |0>
  struct Single {
    std::vector<Qbit> tuple;
    ExactQbit state;
  };
  std::vector<Single> singles;
  std::unordered_map<RayKey, int, RayKeyHash> seen;
  for (std::size_t i = 0; i < programs.size(); ++i)
    if (seen.emplace(outputs[i].output_keys[0], 1).second)
      singles.push_back({outputs[i].output_states, outputs[i].exact_regs[0]});
  REQUIRE(singles.size() >= 5);

  for (const Single& t : singles) {
    for (const Single& s : singles) {
      auto d = gate_distance(t.state, s.state, 14);
      REQUIRE(d.has_value());
      int h_bfs = 2 * *d + 2;
      // oracle: enumeration of every continuation program up to 12 bits
      ComplexityResult enumerated = conditional_complexity(s.tuple, t.tuple, m, 12);
      if (enumerated.h) {
        CHECK(*enumerated.h == h_bfs);
      } else {
        CHECK(h_bfs > 12);
      }
    }
  }
}

TEST_CASE("accumulators reject bad specifications") {
  MachineModel m = MachineModel::standard(2);
  CHECK_THROWS_AS(upsilon({Qbit{1.0, 0.0}}, m, 4), Error);  // wrong register count
  CHECK_THROWS_AS(complexity(all_zero_outputs(2), m, 3), Error);  // odd max_len
}
