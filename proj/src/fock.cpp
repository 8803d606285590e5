#include "qlab/fock.hpp"

#include "qlab/error.hpp"

#include <cmath>

namespace qlab {

namespace {

// sign from anticommuting a_i^dag past the occupied modes below i
double parity_sign(const Occupancy& occ, int mode) {
  int filled = 0;
  for (int m = 0; m < mode; ++m) filled += occ[m];
  return filled % 2 == 0 ? 1.0 : -1.0;
}

void check_mode(int mode, const FockState& s) {
  if (mode < 0 || mode >= s.num_modes)
    fail("InvalidArgument", "mode index out of range");
}

}  // namespace

double FockState::norm() const {
  double n2 = 0.0;
  for (const auto& [occ, amp] : terms) n2 += std::norm(amp);
  return std::sqrt(n2);
}

FockState& FockState::prune(double eps) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= eps)
      it = terms.erase(it);
    else
      ++it;
  }
  return *this;
}

FockState& FockState::scale(Complex factor) {
  for (auto& [occ, amp] : terms) amp *= factor;
  return prune();
}

FockState& FockState::add(const FockState& other, Complex factor) {
  for (const auto& [occ, amp] : other.terms) terms[occ] += factor * amp;
  return prune();
}

FockState FockState::vacuum(Statistics s, int num_modes, int cutoff) {
  if (num_modes <= 0) fail("InvalidArgument", "need at least one mode");
  FockState state;
  state.statistics = s;
  state.num_modes = num_modes;
  state.cutoff = cutoff;
  state.terms[Occupancy(num_modes, 0)] = 1.0;
  return state;
}

FockState annihilate(int mode, const FockState& s) {
  check_mode(mode, s);
  FockState out = s;
  out.terms.clear();
  for (const auto& [occ, amp] : s.terms) {
    int n = occ[mode];
    if (n == 0) continue;
    Occupancy lowered = occ;
    lowered[mode] = n - 1;
    double factor = s.statistics == Statistics::boson
                        ? std::sqrt(static_cast<double>(n))
                        : parity_sign(occ, mode);
    out.terms[lowered] += factor * amp;
  }
  return out.prune();
}

FockState create(int mode, const FockState& s) {
  check_mode(mode, s);
  FockState out = s;
  out.terms.clear();
  for (const auto& [occ, amp] : s.terms) {
    int n = occ[mode];
    if (s.statistics == Statistics::fermion) {
      if (n >= 1) continue;  // (a^dag)^2 = 0
      Occupancy raised = occ;
      raised[mode] = 1;
      out.terms[raised] += parity_sign(occ, mode) * amp;
    } else {
      if (n >= s.cutoff)
        fail("CutoffExceeded", "bosonic occupancy would exceed the cutoff");
      Occupancy raised = occ;
      raised[mode] = n + 1;
      out.terms[raised] += std::sqrt(static_cast<double>(n + 1)) * amp;
    }
  }
  return out.prune();
}

FockState build_fock(const Occupancy& occ, Statistics st, int cutoff) {
  if (occ.empty()) fail("InvalidArgument", "need at least one mode");
  for (int n : occ) {
    if (n < 0) fail("InvalidArgument", "occupancies must be non-negative");
    if (st == Statistics::fermion && n > 1)
      fail("PauliViolation", "fermionic occupancy above 1");
    if (st == Statistics::boson && n > cutoff)
      fail("CutoffExceeded", "requested occupancy above the cutoff");
  }
  FockState state = FockState::vacuum(st, static_cast<int>(occ.size()), cutoff);
  for (int m = 0; m < state.num_modes; ++m) {
    for (int n = 0; n < occ[m]; ++n) state = create(m, state);
    // (a^dag)^N / sqrt(N!) keeps the ket normalized
    double fact = 1.0;
    for (int n = 2; n <= occ[m]; ++n) fact *= n;
    state.scale(1.0 / std::sqrt(fact));
  }
  return state;
}

double commutator_defect(int i, int j, int cutoff) {
  if (i < 0 || j < 0) fail("InvalidArgument", "mode indices must be non-negative");
  if (cutoff < 1) fail("InvalidArgument", "cutoff must be positive");
  const int num_modes = std::max(i, j) + 1;
  const double delta = i == j ? 1.0 : 0.0;

  double worst = 0.0;
  Occupancy occ(num_modes, 0);
  // iterate every ket with all occupancies strictly below the cutoff
  while (true) {
    FockState ket = build_fock(occ, Statistics::boson, cutoff);
    FockState lhs = annihilate(i, create(j, ket));
    lhs.add(create(j, annihilate(i, ket)), -1.0);
    lhs.add(ket, -delta);
    worst = std::max(worst, lhs.norm());

    int m = 0;
    while (m < num_modes && occ[m] == cutoff - 1) occ[m++] = 0;
    if (m == num_modes) break;
    ++occ[m];
  }
  return worst;
}

double anti_commutator_defect(int i, int j, int num_modes) {
  if (i < 0 || j < 0 || i >= num_modes || j >= num_modes)
    fail("InvalidArgument", "mode indices must be below num_modes");
  const double delta = i == j ? 1.0 : 0.0;

  double worst = 0.0;
  for (int bits = 0; bits < (1 << num_modes); ++bits) {
    Occupancy occ(num_modes, 0);
    for (int m = 0; m < num_modes; ++m) occ[m] = (bits >> m) & 1;
    FockState ket = build_fock(occ, Statistics::fermion);
    FockState lhs = annihilate(i, create(j, ket));
    lhs.add(create(j, annihilate(i, ket)));
    lhs.add(ket, -delta);
    worst = std::max(worst, lhs.norm());
  }
  return worst;
}

CloningReport cloning_analysis(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormRejectTol)
    fail("NotNormalized", "|alpha|^2 + |beta|^2 must be 1");

  // (alpha a_2^dag + beta a_1^dag)^2 |0> on a two-mode boson field
  FockState vac = FockState::vacuum(Statistics::boson, 2, 4);
  FockState once = create(1, vac);
  once.scale(alpha).add(create(0, vac), beta);
  FockState copy = create(1, once);
  copy.scale(alpha).add(create(0, once), beta);
  copy.scale(1.0 / copy.norm());

  // amplifier-reachable span: |0_1, 2_2> and |2_1, 0_2>
  FockState outside = copy;
  outside.terms.erase(Occupancy{0, 2});
  outside.terms.erase(Occupancy{2, 0});

  CloningReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.true_copy = copy;
  report.defect = outside.norm();
  return report;
}

}  // namespace qlab
