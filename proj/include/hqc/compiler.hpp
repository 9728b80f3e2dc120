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

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "hqc/circuit.hpp"
#include "hqc/model.hpp"
#include "hqc/sparse_state.hpp"

namespace hqc {

/// One clock-register configuration (excited sites only) with its amplitude.
struct ClockComponent {
  Config excited;
  cplx amp = 1.0;
};

/// A train position. Pulse-encoded positions have one component; positions
/// inside an entangled-encoded qutrit are two-term superpositions.
struct ClockLabel {
  std::string name;
  std::vector<ClockComponent> components;
};

struct ClockMap {
  std::vector<ClockLabel> labels;
  int useful_length = 0;
  std::vector<int> station_sites;  // c_0 .. c_L
  /// Stations c_t with t > useful_length; a train found there certifies the output.
  std::vector<int> success_stations;

  int index_of(const std::string& name) const;
  const ClockLabel& at(const std::string& name) const { return labels.at(static_cast<std::size_t>(index_of(name))); }
  void add(ClockLabel label);

 private:
  std::unordered_map<std::string, int> by_name_;
};

/// Stops of one switch track in clock order.
inline constexpr std::array<const char*, 8> kTrackStops = {"1A", "1B", "2", "3A", "3B", "4", "5A", "5B"};

std::string station_label(int t);
/// e.g. track_label(3, 'u', "1A") == "t=3:u1A"
std::string track_label(int t, char track, std::string_view stop);

struct Compiled {
  Backend backend = Backend::F4;
  TermList hamiltonian;
  ClockMap clock;
};

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Pulse clock plus one hop term U_t (x) |01><10| + h.c. per gate.
Compiled compile_feynman4(const Circuit& c);
/// 3-local railroad switch for every CNOT; other gates as in compile_feynman4.
Compiled compile_switch3(const Circuit& c);
/// 2-local qubit/qutrit two-track gadgets for CNOT and BasisPhase gates.
Compiled compile_qutrit2(const Circuit& c);
/// compile_qutrit2 with every qutrit replaced by an entangled pair of qubits.
Compiled compile_qubit2(const Circuit& c);

Compiled compile(const Circuit& c, Backend backend);

/// True for gates that become a two-track gadget on this backend.
bool is_switch_gadget(const Gate& g, Backend backend);

/// Length of the main clock path from psi_0 to psi_t for the first t gates
/// (counting edges), i.e. t plus the extra stops each gadget inserts.
int walk_edges(const Circuit& c, Backend backend, int t);

/// Appends identities so the walk after the useful part is (factor - 1) times
/// the useful walk length. For F4 this equals pad_with_identities.
Circuit pad_for_walk(const Circuit& c, Backend backend, int factor);

struct BackendCounts {
  int sites = 0;
  std::size_t terms = 0;
  int basis_size = 0;
};

/// Closed-form site, term and subspace-basis counts for a compiled circuit.
BackendCounts expected_counts(const Circuit& c, Backend backend);

}  // namespace hqc
