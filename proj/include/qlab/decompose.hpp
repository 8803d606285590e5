#pragma once

// Decomposition of an n x n unitary into at most n(n-1)/2 two-level
// rotations plus a final diagonal, recomposition, and emission of an
// equivalent beam-splitter mesh netlist.

#include "qlab/u2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

struct TwoLevelFactor {
  int i = 0;        // coordinate pair, 0-based, i < j
  int j = 1;
  U2Params params;  // block of u2_matrix(params) in (i, j) basis order
};

struct Decomposition {
  int n = 0;
  // U = F_1 F_2 ... F_K diag(e^{i theta_0}, ..., e^{i theta_{n-1}})
  std::vector<TwoLevelFactor> factors;
  std::vector<double> diagonal;  // phase angles
};

// Sub-diagonal entries are zeroed column by column, bottom row upward;
// entries already below 1e-14 produce no factor.
Decomposition decompose(const Matrix& u);

Matrix embed_factor(const TwoLevelFactor& f, int n);
Matrix recompose(const Decomposition& d);

// Netlist over wires m0..m{n-1} whose compiled map realizes u; each factor
// becomes a phase/phase/halfsilver/phase group, final wires are tagged with
// detector labels out0..out{n-1}.
std::string emit_mesh(const Matrix& u);

// Parses and compiles a mesh netlist back into the logical-mode-ordered
// matrix, using the out<i> detector labels to undo the wire renaming.
Matrix compile_mesh(const std::string& netlist_text);

// Orthonormalized complex Gaussian matrix; deterministic in the seed.
Matrix random_unitary(int n, std::uint64_t seed);

}  // namespace qlab
