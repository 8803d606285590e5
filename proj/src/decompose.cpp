#include "qlab/decompose.hpp"

#include "qlab/error.hpp"
#include "qlab/interferometer.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace qlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSkipTol = 1e-14;

// t_bs is invariant under (w,a,b,f) -> (pi-w, a+pi, b, f+pi) and
// (w,a,b,f) -> (-w, a+pi, b+pi, f+pi); use both to land cos w and sin w
// in [0,1] so the beam-splitter element's T and R stay legal.
TwoPortParams normalize_bs(TwoPortParams p) {
  p.omega = wrap_angle(p.omega);
  if (p.omega < 0) {
    p.omega = -p.omega;
    p.alpha += kPi;
    p.beta += kPi;
    p.phi += kPi;
  }
  if (p.omega > kPi / 2) {
    p.omega = kPi - p.omega;
    p.alpha += kPi;
    p.phi += kPi;
  }
  p.alpha = wrap_angle(p.alpha);
  p.beta = wrap_angle(p.beta);
  p.phi = wrap_angle(p.phi);
  return p;
}

}  // namespace

Decomposition decompose(const Matrix& u) {
  const int n = static_cast<int>(u.rows());
  if (u.rows() != u.cols()) fail("DimensionMismatch", "decompose needs a square matrix");
  if (n < 2 || n > 64) fail("InvalidArgument", "decompose supports 2 <= n <= 64");
  if (unitarity_defect(u) > 1e-9) fail("NonUnitary", "decompose needs a unitary input");

  Decomposition d;
  d.n = n;
  Matrix a = u;

  for (int col = 0; col < n - 1; ++col) {
    for (int row = n - 1; row > col; --row) {
      if (std::abs(a(row, col)) <= kSkipTol) continue;
      Complex pivot = a(col, col);
      Complex target = a(row, col);
      double r = std::sqrt(std::norm(pivot) + std::norm(target));
      // g zeroes a(row, col) and leaves a real non-negative pivot
      Eigen::Matrix2cd g;
      g << std::conj(pivot) / r, std::conj(target) / r, -target / r, pivot / r;

      Eigen::Matrix<Complex, 2, Eigen::Dynamic> rows(2, n);
      rows.row(0) = a.row(col);
      rows.row(1) = a.row(row);
      rows = g * rows;
      a.row(col) = rows.row(0);
      a.row(row) = rows.row(1);

      TwoLevelFactor f;
      f.i = col;
      f.j = row;
      f.params = u2_params_from_matrix(g.adjoint());
      d.factors.push_back(f);
    }
  }

  d.diagonal.resize(n);
  for (int m = 0; m < n; ++m) d.diagonal[m] = std::arg(a(m, m));
  return d;
}

Matrix embed_factor(const TwoLevelFactor& f, int n) {
  if (f.i < 0 || f.j >= n || f.i >= f.j)
    fail("InvalidArgument", "factor indices out of range");
  Eigen::Matrix2cd block = u2_matrix(f.params);
  Matrix e = Matrix::Identity(n, n);
  e(f.i, f.i) = block(0, 0);
  e(f.i, f.j) = block(0, 1);
  e(f.j, f.i) = block(1, 0);
  e(f.j, f.j) = block(1, 1);
  return e;
}

Matrix recompose(const Decomposition& d) {
  Matrix u = Matrix::Identity(d.n, d.n);
  for (const TwoLevelFactor& f : d.factors) u = u * embed_factor(f, d.n);
  Vector phases(d.n);
  for (int m = 0; m < d.n; ++m) phases(m) = std::exp(Complex(0.0, d.diagonal[m]));
  return u * phases.asDiagonal();
}

std::string emit_mesh(const Matrix& u) {
  Decomposition d = decompose(u);
  const int n = d.n;

  std::vector<std::string> wire(n);
  for (int m = 0; m < n; ++m) wire[m] = "m" + std::to_string(m);

  std::vector<std::string> lines;
  std::vector<std::string> all_wires = wire;
  char buf[256];

  // applied first: the diagonal phases on the input wires
  for (int m = 0; m < n; ++m) {
    std::snprintf(buf, sizeof(buf), "phase %s phi=%.17g", wire[m].c_str(),
                  d.diagonal[m]);
    lines.push_back(buf);
  }

  // factors F_K .. F_1; each one is a beam splitter framed by phase
  // shifters, realizing the factor block by forward substitution
  int stage = 0;
  for (auto it = d.factors.rbegin(); it != d.factors.rend(); ++it) {
    const TwoLevelFactor& f = *it;
    ++stage;
    Eigen::Matrix2cd block = u2_matrix(f.params);
    // forward substitution through the device realizes conj(t_bs(params))
    U2Params canonical = u2_params_from_matrix(block.conjugate());
    TwoPortParams bs = normalize_bs(canonical_to_bs(canonical));

    std::string ni = "m" + std::to_string(f.i) + "_s" + std::to_string(stage);
    std::string nj = "m" + std::to_string(f.j) + "_s" + std::to_string(stage);
    all_wires.push_back(ni);
    all_wires.push_back(nj);

    std::snprintf(buf, sizeof(buf), "phase %s phi=%.17g", wire[f.i].c_str(),
                  wrap_angle(bs.alpha + bs.beta));
    lines.push_back(buf);
    std::snprintf(buf, sizeof(buf), "phase %s phi=%.17g", wire[f.j].c_str(),
                  bs.beta);
    lines.push_back(buf);
    std::snprintf(buf, sizeof(buf), "halfsilver %s %s -> %s %s T=%.17g",
                  wire[f.i].c_str(), wire[f.j].c_str(), nj.c_str(), ni.c_str(),
                  std::cos(bs.omega));
    lines.push_back(buf);
    std::snprintf(buf, sizeof(buf), "phase %s phi=%.17g", ni.c_str(), bs.phi);
    lines.push_back(buf);

    wire[f.i] = ni;
    wire[f.j] = nj;
  }

  std::ostringstream out;
  out << "# two-level mesh, " << d.factors.size() << " factor(s) on " << n
      << " modes\nmode";
  for (const auto& w : all_wires) out << ' ' << w;
  out << '\n';
  for (const auto& l : lines) out << l << '\n';
  for (int m = 0; m < n; ++m)
    out << "detector " << wire[m] << " out" << m << '\n';
  return out.str();
}

Matrix compile_mesh(const std::string& netlist_text) {
  Circuit circuit = parse_netlist(netlist_text);
  CompiledCircuit compiled = compile(circuit);
  const int n = static_cast<int>(compiled.input_modes.size());
  if (static_cast<int>(circuit.detectors.size()) != n)
    fail("InvalidArgument", "mesh netlist must carry one out<i> detector per mode");

  Matrix result(n, n);
  for (const Detector& det : circuit.detectors) {
    if (det.label.rfind("out", 0) != 0)
      fail("InvalidArgument", "mesh detector labels must be out<i>");
    int logical = std::stoi(det.label.substr(3));
    int row = compiled.output_index(det.mode);
    if (logical < 0 || logical >= n || row < 0)
      fail("InvalidArgument", "mesh detector does not match a live mode");
    result.row(logical) = compiled.map.row(row);
  }
  return result;
}

Matrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    Complex diag = r(c, c);
    q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace qlab
