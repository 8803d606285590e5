#include "qlab/qbit.hpp"

#include "qlab/error.hpp"

#include <cmath>

namespace qlab {

namespace {

// splitmix64 finalizer; draw i of a seeded stream is hash(seed, i).
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = splitmix64(seed ^ splitmix64(i));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

StateVector Qbit::state() const { return StateVector::from({alpha, beta}); }

Qbit make_qbit(Complex alpha, Complex beta) {
  double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > kNormRejectTol)
    fail("NotNormalized", "|alpha|^2 + |beta|^2 must be 1");
  return {alpha, beta};
}

Qbit code_qbit(double omega, double phi, double delta) {
  Complex global = std::exp(Complex(0.0, phi));
  Complex rel = std::exp(Complex(0.0, delta));
  return {global * std::sin(omega), global * rel * std::cos(omega)};
}

CbitClass classify(const Qbit& q) {
  if (std::abs(q.beta) <= kEntryTol) return CbitClass::classical_one;
  if (std::abs(q.alpha) <= kEntryTol) return CbitClass::classical_zero;
  return CbitClass::nonclassical;
}

std::pair<double, double> measure_probs(const Qbit& q) {
  return {std::norm(q.alpha), std::norm(q.beta)};
}

SampleCounts sample_measurements_serial(const Qbit& q, std::uint64_t n,
                                        std::uint64_t seed) {
  if (n == 0) fail("InvalidArgument", "sample count must be at least 1");
  double pt = measure_probs(q).first;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (uniform01(seed, i) < pt) ++hits;
  return {hits, n - hits};
}

SampleCounts sample_measurements(const Qbit& q, std::uint64_t n,
                                 std::uint64_t seed) {
  if (n == 0) fail("InvalidArgument", "sample count must be at least 1");
  double pt = measure_probs(q).first;
  std::int64_t sn = static_cast<std::int64_t>(n);
  std::int64_t hits = 0;
  // Draws are indexed, not sequential, so the reduction is exact and
  // thread-count independent.
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t i = 0; i < sn; ++i)
    if (uniform01(seed, static_cast<std::uint64_t>(i)) < pt) ++hits;
  std::uint64_t h = static_cast<std::uint64_t>(hits);
  return {h, n - h};
}

bool ray_equal(const Qbit& a, const Qbit& b, double tol) {
  return ray_equal(a.state().amps, b.state().amps, tol);
}

Qbit halting_fixed_point() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Complex(r, 0.0), Complex(r, 0.0)};
}

}  // namespace qlab
