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
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hqc/circuit.hpp"

namespace hqc::testing {

inline constexpr std::array<Backend, 4> kAllBackends = {Backend::F4, Backend::S3, Backend::Q23, Backend::Q22};

/// Haar-ish 2x2 unitary from three angles and a global phase.
inline Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const double a = std::acos(std::sqrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng)));
  const double phi = ang(rng), chi = ang(rng), g = ang(rng);
  Eigen::Matrix2cd u;
  u << std::cos(a), -std::polar(std::sin(a), phi), std::polar(std::sin(a), chi), std::polar(std::cos(a), phi + chi);
  return std::polar(1.0, g) * u;
}

/// n in {2, 3}, 1 <= L <= 5, at most two switch gadgets (CNOT or BasisPhase
/// in a random basis), random input; accepted by every backend.
inline Circuit random_circuit(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(2, 3), ld(1, 5);
  const int n = nd(rng), L = ld(rng);
  std::uniform_int_distribution<int> qd(0, n - 1), kind(0, 2);
  std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
  std::vector<Gate> gates;
  int gadgets = 0;
  for (int t = 0; t < L; ++t) {
    int k = kind(rng);
    if (gadgets == 2) k = 0;
    if (k == 0) {
      gates.push_back(Gate::identity(qd(rng)));
      continue;
    }
    ++gadgets;
    if (k == 1) {
      const int c = qd(rng);
      int tgt = qd(rng);
      while (tgt == c) tgt = qd(rng);
      gates.push_back(Gate::cnot(c, tgt));
    } else {
      gates.push_back(Gate::basis_phase(qd(rng), theta(rng), random_unitary(rng)));
    }
  }
  std::string input;
  for (int q = 0; q < n; ++q) input.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? '1' : '0');
  return make_circuit(n, input, gates);
}

inline std::vector<Circuit> random_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Circuit> out;
  for (int i = 0; i < count; ++i) out.push_back(random_circuit(rng));
  return out;
}

inline Circuit one_cnot(const std::string& input = "11") { return make_circuit(2, input, {Gate::cnot(0, 1)}); }

inline Circuit identities(int n, int L) {
  return make_circuit(n, std::string(static_cast<std::size_t>(n), '0'), std::vector<Gate>(L, Gate::identity(0)));
}

}  // namespace hqc::testing
