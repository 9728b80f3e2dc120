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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hqc/compiler.hpp"
#include "hqc/sparse_state.hpp"
#include "hqc/subspace.hpp"

namespace hqc {

/// Eigenvalue differences below this count as degenerate in time averages.
inline constexpr double kDegeneracyTol = 1e-9;

/// Exact propagator of a small Hermitian matrix through its eigendecomposition.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Eigen::MatrixXcd& h);

  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

  /// exp(-i H t) psi0
  Eigen::VectorXcd state_at(const Eigen::VectorXcd& psi0, double t) const;
  /// (1/T) int_0^T |<j|exp(-i H t)|psi0>|^2 dt; T = 0 gives |psi0_j|^2.
  Eigen::VectorXd time_averaged(const Eigen::VectorXcd& psi0, double T) const;
  /// T -> infinity limit of time_averaged.
  Eigen::VectorXd limiting(const Eigen::VectorXcd& psi0) const;
  /// B with TV(time_averaged(psi0, T), limiting(psi0)) <= B / T for all T > 0.
  double averaging_bound(const Eigen::VectorXcd& psi0) const;

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

/// exp(-i H T) psi0 by exact exponentiation of a (restricted) matrix.
Eigen::VectorXcd evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0, double T);

struct EvolveStats {
  int steps = 0;
  double dt = 0.0;
  double h_norm_est = 0.0;
  double max_norm_drift = 0.0;
  std::size_t max_support = 0;  // largest number of stored amplitudes
};

/// Largest |Ritz value| of H on the Krylov space of psi0.
double estimate_norm(const SparseOperator& h, const SparseState& psi0, int iterations = 30);

/// Full-space evolution with fixed-size Lanczos steps. Each step exponentiates
/// the projected tridiagonal matrix exactly, so the integrator is unitary up
/// to the Krylov truncation. dt <= 0 selects the largest allowed step.
/// Throws std::invalid_argument when dt > 0.1 / ||H||_est or psi0 is not unit norm.
SparseState evolve(const SparseOperator& h, const SparseState& psi0, double T, double dt,
                   EvolveStats* stats = nullptr);

/// Dense wrapper over the sparse integrator; guarded by the register size.
StateVector evolve(const TermList& h, const StateVector& psi0, double T, double dt, EvolveStats* stats = nullptr);

/// Continuous-time walk on the path graph with N vertices, started at an
/// endpoint (or any vertex), solved in the analytic sine basis.
class LineWalkOracle {
 public:
  explicit LineWalkOracle(int n, int start = 0);

  int size() const { return n_; }
  /// 2 cos(pi k / (N + 1)), k = 1..N
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  /// Column k-1 holds sqrt(2/(N+1)) sin(pi k j / (N+1)), j = 1..N.
  const Eigen::MatrixXd& eigenvectors() const { return evecs_; }
  const Eigen::VectorXd& limiting_distribution() const { return limit_; }

  Eigen::VectorXcd amplitudes(double t) const;
  Eigen::VectorXd time_avg_dist(double T) const;
  /// B with TV(time_avg_dist(T), limiting_distribution()) <= B / T.
  double averaging_bound() const;
  /// Path adjacency matrix, for cross-checks against generic code.
  Eigen::MatrixXd adjacency() const;

 private:
  int n_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
  Eigen::VectorXd overlap_;  // <k|start>
  Eigen::VectorXd limit_;
};

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Comb graph with N vertices: the Q23 walk graph of a circuit holding N/16
/// evenly spread CNOT gadgets, padded with identities to exactly N vertices.
Eigen::MatrixXcd comb_adjacency(int n);

struct MixingFit {
  std::vector<double> t_mix;
  /// False when the B / T certificate does not reach eps within the budget;
  /// t_mix is then only the last violation seen below the budget.
  std::vector<bool> converged;
  bool monotone = false;
  double exponent = 0.0;
  double intercept = 0.0;
  double exponent_stderr = 0.0;
};

struct MixingEstimate {
  std::vector<int> lengths;
  std::vector<double> eps;
  int trials = 0;
  double t_budget_factor = 0.0;  // search gives up beyond factor * N^2
  MixingFit path;
  MixingFit comb;
};

/// Time-averaged mixing time for each N with eps = 1/N: the smallest T such
/// that TV(time_avg_dist(T'), limit) <= eps at every sampled T' >= T. Samples
/// form a geometric grid (64 per octave) up to the point where the B / T
/// bound guarantees eps; the last violating cell is refined by `trials`
/// bisection steps. log T_mix is then fitted against log N by least squares.
MixingEstimate estimate_mixing_scaling(const std::vector<int>& lengths, int trials = 40);

struct ProtocolOptions {
  int padding = 6;
  std::optional<double> time;  // unset: 4 N^2 with N the subspace dimension
  int samples = 64;
  std::uint64_t seed = 1;
  bool full_space = false;
  double dt = 0.0;  // full-space step, <= 0 for automatic
};

struct EvolutionReport {
  Backend backend = Backend::F4;
  int n = 0;
  int useful_length = 0;
  int padded_length = 0;
  std::size_t basis_size = 0;
  int output_qubit = 0;
  double T = 0.0;
  std::uint64_t seed = 0;
  bool full_space = false;

  std::vector<double> times;
  std::vector<double> p_success;
  /// Conditional on success; NaN where p_success <= 1e-12.
  std::vector<double> p_output_one;
  std::vector<double> fidelity;

  double mean_p_success = 0.0;
  double time_avg_p_success = 0.0;
  double min_fidelity = 0.0;  // over defined samples; NaN if none
  std::vector<std::string> clock_labels;
  std::vector<double> time_avg_clock_dist;
};

inline constexpr double kSuccessFloor = 1e-12;

/// Pads, compiles, evolves psi_0 and measures the success stations at random times.
EvolutionReport run_protocol(const Circuit& c, Backend backend, const ProtocolOptions& opt = {});

/// Success probability, output-one probability and fidelity with `target`
/// for a full-register state, conditioned on the train at a success station.
struct ConditionalOutcome {
  double p_success = 0.0;
  double p_output_one = 0.0;
  double fidelity = 0.0;
};

ConditionalOutcome measure_success(const SparseState& psi, const ClockMap& clock, int n, int output_qubit,
                                   const WorkVector& target);

}  // namespace hqc
