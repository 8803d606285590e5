// Compares the OpenMP kernels against their serial reference
// implementations and checks that the results are identical.

#include "qlab/decompose.hpp"
#include "qlab/omega.hpp"
#include "qlab/qbit.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", threads());
  bool ok = true;

  {
    const int maxlen = 24;
    qlab::MachineModel m = qlab::MachineModel::standard(2);

    auto t0 = Clock::now();
    qlab::OmegaAccumulator serial = qlab::omega_serial(m, maxlen);
    double ts = seconds_since(t0);

    t0 = Clock::now();
    qlab::OmegaAccumulator parallel = qlab::omega(m, maxlen);
    double tp = seconds_since(t0);

    bool same = serial.omega == parallel.omega &&
                serial.omega_sq == parallel.omega_sq &&
                serial.kraft == parallel.kraft;
    ok = ok && same;
    std::printf("omega maxlen=%d      serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                maxlen, ts, tp, ts / tp, same ? "bit-identical" : "MISMATCH");
  }

  {
    const std::uint64_t n = 40'000'000;
    qlab::Qbit q = qlab::halting_fixed_point();

    auto t0 = Clock::now();
    qlab::SampleCounts serial = qlab::sample_measurements_serial(q, n, 7);
    double ts = seconds_since(t0);

    t0 = Clock::now();
    qlab::SampleCounts parallel = qlab::sample_measurements(q, n, 7);
    double tp = seconds_since(t0);

    bool same = serial.count_t == parallel.count_t;
    ok = ok && same;
    std::printf("sampling n=%llu  serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                static_cast<unsigned long long>(n), ts, tp, ts / tp,
                same ? "bit-identical" : "MISMATCH");
  }

  {
    const int n = 16, reps = 64;
    std::vector<qlab::Matrix> inputs(reps);
    for (int i = 0; i < reps; ++i) inputs[i] = qlab::random_unitary(n, 100 + i);
    std::vector<double> errors(reps);

    auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i)
      errors[i] = (qlab::recompose(qlab::decompose(inputs[i])) - inputs[i]).norm();
    double ts = seconds_since(t0);

    std::vector<double> perrors(reps);
    t0 = Clock::now();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < reps; ++i)
      perrors[i] = (qlab::recompose(qlab::decompose(inputs[i])) - inputs[i]).norm();
    double tp = seconds_since(t0);

    bool same = errors == perrors;
    ok = ok && same;
    std::printf("decompose n=%d x%d   serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n",
                n, reps, ts, tp, ts / tp, same ? "bit-identical" : "MISMATCH");
  }

  std::printf("\n%s\n", ok ? "all kernels match their serial reference" : "KERNEL MISMATCH");
  return ok ? 0 : 1;
}
