#pragma once

// Line-oriented netlist format for lossless optical elements over named
// modes.  Grammar (one element per line, '#' starts a comment):
//
//   mode <name>+
//   source <mode>
//   mirror <in> -> <out>
//   beamsplitter <in> -> <out1> <out2>
//   halfsilver <in> -> <out1> <out2> T=<float>
//   halfsilver <in1> <in2> -> <out1> <out2> T=<float>
//   phase <mode> phi=<float|pi-expr>
//   downconvert <in> -> <out1> <out2> eta=<float>
//   upconvert <in1> <in2> -> <out> eta=<float>
//   amplify <in> -> <out> G=<float> N=<float>
//   detector <mode> <label>
//
// Angle literals accept decimal floats and pi expressions (pi, -pi/2,
// 3pi/4, 0.5pi, ...).  The two-input halfsilver form is the same physical
// beam splitter addressed from both ports: in1 -> T out1 + iR out2 and
// in2 -> T out2 + iR out1.

#include <string>
#include <vector>

namespace qlab {

enum class ElementKind {
  mirror,
  generic_bs,
  halfsilver,
  phase,
  downconvert,
  upconvert,
  amplify,
};

struct Element {
  ElementKind kind;
  std::vector<std::string> input_modes;
  std::vector<std::string> output_modes;
  double T = 0.0;    // halfsilver transmission, R = sqrt(1 - T^2)
  double phi = 0.0;  // phase shift
  double eta = 0.0;  // conversion rate
  double G = 0.0, N = 0.0;  // amplifier gain and noise
  int line = 0;             // source line for diagnostics
};

struct Detector {
  std::string mode;
  std::string label;
};

struct Circuit {
  std::vector<std::string> modes;  // declaration order
  std::vector<Element> elements;   // declaration order = substitution order
  std::vector<std::string> sources;
  std::vector<Detector> detectors;
};

// Rejects malformed input with positioned diagnostics (SyntaxError,
// UndeclaredMode, DuplicateLabel, ParamOutOfRange).
Circuit parse_netlist(const std::string& text);

// The built-in Mach-Zehnder: two 50:50 half-silvered mirrors, two mirrors
// and one phase shifter, detectors D1/D2.
std::string mz_netlist(double phi);

}  // namespace qlab
