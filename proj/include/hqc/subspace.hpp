// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "hqc/compiler.hpp"
#include "hqc/sparse_state.hpp"

namespace hqc {

/// Work-register factor paired with a clock position.
struct BasisComponent {
  WorkVector work;
  int clock_label = 0;  // index into ClockMap::labels
};

struct BasisVector {
  std::string label;
  std::vector<BasisComponent> parts;
  int station = -1;  // t for history states psi_t, -1 inside gadgets
};

/// Orthonormal basis of the computational subspace for one compiled circuit.
///
/// Ordering follows the clock path: psi_0, then for every gate its gadget
/// stops (1A..5B, or 1, 2 for the 3-local switch), the blind alleys 1x and 5x,
/// and finally psi_t.
///
/// Gadget states split the work register by the train master. For BasisPhase
/// gadgets every vector after the upper-track phase hop carries an extra
/// global factor e^{-i theta}, so the phase shows up as the matrix element on
/// the 3A -> 3B edge and nowhere else.
struct SubspaceBasis {
  Backend backend = Backend::F4;
  int n = 0;
  std::vector<BasisVector> vectors;
  std::vector<SparseState> sparse;  // full-register expansion of `vectors`

  std::size_t size() const { return vectors.size(); }
  std::vector<std::string> labels() const;
  int index_of(const std::string& label) const;
};

SubspaceBasis build_computational_basis(const Circuit& c, const Compiled& compiled);
SubspaceBasis build_computational_basis(const Circuit& c, const Compiled& compiled, const WorkVector& phi0);

/// Expands work (x) clock components into full-register amplitudes.
SparseState expand(const BasisVector& v, const ClockMap& clock, int n);

/// Gram matrix <v_i|v_j>.
Eigen::MatrixXcd gram_matrix(const SubspaceBasis& b);

/// max_j ||(I - P) H v_j|| with P the projector onto span(B), applied as
/// sum_i v_i <v_i| . without forming P.
double verify_invariance(const TermList& h, const SubspaceBasis& b);

inline constexpr double kClosureTol = 1e-10;

struct Restriction {
  Eigen::MatrixXcd matrix;  // <v_i|H|v_j>
  std::vector<std::string> labels;
  double residual = 0.0;
  bool closed = false;  // residual <= kClosureTol
};

Restriction restrict_hamiltonian(const TermList& h, const SubspaceBasis& b);

struct WalkGraph {
  std::vector<std::string> labels;
  Eigen::MatrixXcd adjacency;  // adjacency(i, j) = expected <v_i|H|v_j>
};

/// Target restriction derived from circuit structure alone: a path of history
/// states, CNOT edges subdivided on S3, and on Q23/Q22 every gadget expands
/// into the 9-edge track path with blind alleys hanging off psi_{t-1} and psi_t.
WalkGraph expected_walk_graph(const Circuit& c, Backend backend);

double max_entry_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct VerifyReport {
  Backend backend = Backend::F4;
  double residual = 0.0;
  std::size_t basis_size = 0;
  bool restriction_match = false;
  double max_entry_error = 0.0;

  bool ok() const { return residual <= kClosureTol && restriction_match; }
};

VerifyReport verify(const Circuit& c, const Compiled& compiled);

}  // namespace hqc
