#include "qlab/interferometer.hpp"

#include "qlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace qlab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

enum class ModeStatus { virgin, live, consumed };

const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::mirror: return "mirror";
    case ElementKind::generic_bs: return "beamsplitter";
    case ElementKind::halfsilver: return "halfsilver";
    case ElementKind::phase: return "phase";
    case ElementKind::downconvert: return "downconvert";
    case ElementKind::upconvert: return "upconvert";
    case ElementKind::amplify: return "amplify";
  }
  return "?";
}

}  // namespace

int CompiledCircuit::input_index(const std::string& mode) const {
  auto it = std::find(input_modes.begin(), input_modes.end(), mode);
  return it == input_modes.end() ? -1
                                 : static_cast<int>(it - input_modes.begin());
}

int CompiledCircuit::output_index(const std::string& mode) const {
  auto it = std::find(output_modes.begin(), output_modes.end(), mode);
  return it == output_modes.end() ? -1
                                  : static_cast<int>(it - output_modes.begin());
}

CompiledCircuit compile(const Circuit& c, MirrorPhase mp) {
  const int n = static_cast<int>(c.modes.size());
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[c.modes[i]] = i;

  Matrix u = Matrix::Identity(n, n);
  std::vector<ModeStatus> status(n, ModeStatus::virgin);
  std::vector<bool> is_port(n, false);

  auto read_mode = [&](const std::string& name, int line) -> int {
    int m = index.at(name);
    if (status[m] == ModeStatus::consumed)
      fail("NonUnitaryComposition",
           "mode '" + name + "' reused as input after consumption (line " +
               std::to_string(line) + ")");
    if (status[m] == ModeStatus::virgin) is_port[m] = true;
    status[m] = ModeStatus::consumed;
    return m;
  };

  for (const Element& e : c.elements) {
    switch (e.kind) {
      case ElementKind::downconvert:
      case ElementKind::upconvert:
      case ElementKind::amplify:
        fail("NonUnitaryElement",
             std::string(kind_name(e.kind)) +
                 " is not unitary on the single-particle mode space (line " +
                 std::to_string(e.line) + ")");
      default:
        break;
    }

    // coefficients: contribution of each input row to each output row
    const Complex mirror_factor = mp == MirrorPhase::exact ? kI : Complex(1.0);
    std::vector<int> in, out;
    for (const auto& name : e.input_modes) in.push_back(read_mode(name, e.line));
    for (const auto& name : e.output_modes) out.push_back(index.at(name));

    std::vector<Eigen::RowVectorXcd> contribution(out.size(),
                                                  Eigen::RowVectorXcd::Zero(n));
    switch (e.kind) {
      case ElementKind::mirror:
        contribution[0] = mirror_factor * u.row(in[0]);
        break;
      case ElementKind::generic_bs: {
        const double r = 1.0 / std::sqrt(2.0);
        contribution[0] = r * u.row(in[0]);
        contribution[1] = r * u.row(in[0]);
        break;
      }
      case ElementKind::halfsilver: {
        const double T = e.T;
        const double R = std::sqrt(1.0 - T * T);
        contribution[0] = T * u.row(in[0]);
        contribution[1] = kI * R * u.row(in[0]);
        if (in.size() == 2) {
          contribution[0] += kI * R * u.row(in[1]);
          contribution[1] += T * u.row(in[1]);
        }
        break;
      }
      case ElementKind::phase:
        contribution[0] = std::exp(kI * e.phi) * u.row(in[0]);
        break;
      default:
        break;
    }

    for (int m : in) u.row(m).setZero();
    for (std::size_t k = 0; k < out.size(); ++k) {
      u.row(out[k]) += contribution[k];
      status[out[k]] = ModeStatus::live;
    }
  }

  CompiledCircuit result;
  std::vector<int> in_rows, out_rows;
  for (int m = 0; m < n; ++m) {
    if (status[m] == ModeStatus::virgin) is_port[m] = true;
    if (is_port[m]) {
      result.input_modes.push_back(c.modes[m]);
      in_rows.push_back(m);
    }
    if (status[m] != ModeStatus::consumed) {
      result.output_modes.push_back(c.modes[m]);
      out_rows.push_back(m);
    }
  }

  result.map.resize(out_rows.size(), in_rows.size());
  for (std::size_t r = 0; r < out_rows.size(); ++r)
    for (std::size_t k = 0; k < in_rows.size(); ++k)
      result.map(r, k) = u(out_rows[r], in_rows[k]);

  Matrix gram = result.map.adjoint() * result.map;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > kComposedTol)
    fail("NonUnitaryComposition",
         "compiled map is not an isometry on the spanned modes");

  if (c.sources.size() == 1) {
    int col = result.input_index(c.sources.front());
    if (col < 0)
      fail("InvalidSource",
           "source mode '" + c.sources.front() + "' is not a free input port");
    for (const Detector& d : c.detectors) {
      int row = result.output_index(d.mode);
      result.detector_probs[d.label] =
          row < 0 ? 0.0 : std::norm(result.map(row, col));
    }
  }
  return result;
}

std::pair<double, double> mz_probabilities(double phi) {
  const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
  std::pair<double, double> closed{c * c, s * s};

  CompiledCircuit mz = compile(parse_netlist(mz_netlist(phi)));
  double p1 = mz.detector_probs.at("D1");
  double p2 = mz.detector_probs.at("D2");
  if (std::abs(p1 - closed.first) > kEntryTol ||
      std::abs(p2 - closed.second) > kEntryTol)
    fail("InternalCheckFailed",
         "compiled Mach-Zehnder disagrees with the closed form");
  return closed;
}

Eigen::Matrix2cd t_bs(const TwoPortParams& p) {
  const double c = std::cos(p.omega), s = std::sin(p.omega);
  Eigen::Matrix2cd m;
  m << -kI * std::exp(-kI * (p.alpha + p.phi)) * s, std::exp(-kI * p.phi) * c,
      std::exp(-kI * p.alpha) * c, -kI * s;
  return std::exp(-kI * p.beta) * m;
}

Eigen::Matrix2cd t_mz(const TwoPortParams& p) {
  const double c = std::cos(p.omega / 2.0), s = std::sin(p.omega / 2.0);
  Eigen::Matrix2cd m;
  m << -std::exp(-kI * (p.alpha + p.phi)) * s, std::exp(-kI * p.phi) * c,
      std::exp(-kI * p.alpha) * c, s;
  return -kI * std::exp(-kI * (p.beta + p.omega / 2.0)) * m;
}

TwoPortParams bs_to_mz(const TwoPortParams& p) {
  TwoPortParams q;
  q.alpha = p.alpha - kPi / 2.0;
  q.beta = p.beta - p.omega;
  q.omega = 2.0 * p.omega;
  q.phi = p.phi - kPi / 2.0;
  q.flavor = TwoPortFlavor::mz;
  return q;
}

TwoPortParams canonical_to_bs(const U2Params& p) {
  TwoPortParams q;
  q.omega = p.omega - kPi / 2.0;
  q.alpha = -p.alpha - p.phi - kPi / 2.0;
  q.beta = p.beta + p.alpha + kPi / 2.0;
  q.phi = p.phi - p.alpha + kPi / 2.0;
  q.flavor = TwoPortFlavor::bs;
  return q;
}

GateRealization gate_realization(GateName name) {
  auto bs = [](double w, double a, double b, double f) {
    return TwoPortParams{w, a, b, f, TwoPortFlavor::bs};
  };
  auto mz = [](double a, double b, double w, double f) {
    return TwoPortParams{w, a, b, f, TwoPortFlavor::mz};
  };
  switch (name) {
    case GateName::identity:
      return {bs(-kPi / 2, -kPi / 2, kPi / 2, kPi / 2), mz(-kPi, kPi, -kPi, 0)};
    case GateName::not_gate:
      return {bs(0, 0, 0, 0), mz(-kPi / 2, 0, 0, -kPi / 2)};
    case GateName::sqrt_not:
      return {bs(-kPi / 4, -kPi / 2, kPi / 2, kPi / 2),
              mz(-kPi, 3 * kPi / 4, -kPi / 2, 0)};
    case GateName::sqrt_not_prime:
      return {bs(-kPi / 4, 0, kPi / 4, 0),
              mz(-kPi / 2, kPi / 2, -kPi / 2, -kPi / 2)};
  }
  fail("UnknownGate", "no realization for gate");
}

}  // namespace qlab
