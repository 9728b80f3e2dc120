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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hqc {

using cplx = std::complex<double>;
using WorkVector = Eigen::VectorXcd;

inline constexpr double kUnitaryTol = 1e-12;

enum class GateKind { Identity, CNOT, SingleQubit, BasisPhase };

/// A single gate of a work-register circuit.
///
/// For BasisPhase the stored matrix is the basis B and the gate acts as
/// W = B diag(1, e^{i theta}) B^dagger. For SingleQubit it is the unitary itself.
struct Gate {
  GateKind kind = GateKind::Identity;
  int target = 0;
  int control = -1;  // CNOT only
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
  double theta = 0.0;  // BasisPhase only

  static Gate identity(int q);
  static Gate cnot(int control, int target);
  static Gate single_qubit(int q, const Eigen::Matrix2cd& u);
  static Gate basis_phase(int q, double theta,
                          const Eigen::Matrix2cd& basis = Eigen::Matrix2cd::Identity());

  /// 2x2 unitary for one-qubit kinds (W for BasisPhase, I for Identity).
  Eigen::Matrix2cd local_unitary() const;
  /// Projector B|b><b|B^dagger selecting the train-master branch b of a switch
  /// gadget. For CNOT this is the computational projector on the control.
  Eigen::Matrix2cd branch_projector(int b) const;
  /// Work qubit that steers the switch (CNOT control, BasisPhase target).
  int train_master() const { return kind == GateKind::CNOT ? control : target; }

  bool operator==(const Gate&) const = default;
};

std::string_view gate_kind_name(GateKind k);

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
  std::string input;  // computational-basis string, qubit 0 first
  /// Number of leading gates that carry the computation; the rest is padding.
  int useful_length = 0;

  int length() const { return static_cast<int>(gates.size()); }
  bool operator==(const Circuit&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Backend { F4, S3, Q23, Q22 };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view s);

/// Circuit with useful_length = number of gates.
Circuit make_circuit(int n, std::string input, std::vector<Gate> gates);

/// Checks structural invariants (indices, unitarity, L >= 1). Throws std::invalid_argument.
void check_circuit(const Circuit& c);

Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

/// Gate-set violations for a backend; empty means the circuit is accepted.
std::vector<std::string> validate_for_backend(const Circuit& c, Backend backend);

Circuit pad_with_identities(const Circuit& c, int factor);
/// Appends Identity(0) gates until the circuit has `total_length` gates.
Circuit pad_to_length(const Circuit& c, int total_length);

/// |phi_0> for the input string; qubit 0 is the most significant bit.
WorkVector initial_state(const Circuit& c);

void apply_gate(const Gate& g, int n, WorkVector& psi);

/// U_t ... U_1 psi.
WorkVector apply_circuit_prefix(const Circuit& c, int t, const WorkVector& psi);

bool is_unitary(const Eigen::Matrix2cd& u, double tol = kUnitaryTol);

}  // namespace hqc
