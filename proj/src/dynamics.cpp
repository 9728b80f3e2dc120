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

#include "hqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace hqc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// (1/T) int_0^T exp(-i d t) dt
cplx average_phase(double d, double T) {
  const double x = d * T;
  if (std::abs(d) < kDegeneracyTol) return 1.0;
  if (T == 0.0) return 1.0;
  return cplx(std::sin(x), std::cos(x) - 1.0) / x;
}

/// Row sums of Re[(A K) o conj(A)] with K_kl = f(E_k - E_l).
template <typename F>
Eigen::VectorXd averaged_populations(const Eigen::MatrixXcd& a, const Eigen::VectorXd& evals, F kernel) {
  const Eigen::Index n = evals.size();
  Eigen::MatrixXcd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = kernel(evals(i) - evals(j));
  const Eigen::MatrixXcd ak = a * k;
  return ak.cwiseProduct(a.conjugate()).real().rowwise().sum();
}

}  // namespace

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("Hamiltonian must be square");
  if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Eigen::VectorXcd SpectralPropagator::state_at(const Eigen::VectorXcd& psi0, double t) const {
  if (psi0.size() != evals_.size()) throw std::invalid_argument("state dimension mismatch");
  Eigen::VectorXcd c = evecs_.adjoint() * psi0;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -evals_(k) * t);
  return evecs_ * c;
}

Eigen::VectorXd SpectralPropagator::time_averaged(const Eigen::VectorXcd& psi0, double T) const {
  if (psi0.size() != evals_.size()) throw std::invalid_argument("state dimension mismatch");
  if (T < 0.0) throw std::invalid_argument("averaging window must be nonnegative");
  const Eigen::MatrixXcd a = evecs_ * (evecs_.adjoint() * psi0).asDiagonal();
  return averaged_populations(a, evals_, [T](double d) { return average_phase(d, T); });
}

Eigen::VectorXd SpectralPropagator::limiting(const Eigen::VectorXcd& psi0) const {
  if (psi0.size() != evals_.size()) throw std::invalid_argument("state dimension mismatch");
  const Eigen::MatrixXcd a = evecs_ * (evecs_.adjoint() * psi0).asDiagonal();
  return averaged_populations(a, evals_, [](double d) { return cplx(std::abs(d) < kDegeneracyTol ? 1.0 : 0.0); });
}

double SpectralPropagator::averaging_bound(const Eigen::VectorXcd& psi0) const {
  if (psi0.size() != evals_.size()) throw std::invalid_argument("state dimension mismatch");
  const Eigen::MatrixXd a = (evecs_ * (evecs_.adjoint() * psi0).asDiagonal()).cwiseAbs();
  // |(1 - e^{-ix}) / (ix)| <= 2 / |x|
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(evals_.size(), evals_.size());
  for (Eigen::Index k = 0; k < evals_.size(); ++k)
    for (Eigen::Index l = 0; l < evals_.size(); ++l) {
      const double d = std::abs(evals_(k) - evals_(l));
      if (d >= kDegeneracyTol) w(k, l) = 2.0 / d;
    }
  return 0.5 * (a * w).cwiseProduct(a).sum();
}

Eigen::VectorXcd evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi0, double T) {
  if (h.rows() != psi0.size()) throw std::invalid_argument("state dimension mismatch");
  return SpectralPropagator(h).state_at(psi0, T);
}

namespace {

struct Lanczos {
  std::vector<SparseState> basis;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis[j] and basis[j + 1]
};

/// One Lanczos iteration with full reorthogonalization; returns false on breakdown.
bool lanczos_extend(const SparseOperator& h, Lanczos& lz) {
  const SparseState& v = lz.basis.back();
  SparseState w = h.apply(v);
  lz.alpha.push_back(inner(v, w).real());
  for (int pass = 0; pass < 2; ++pass)
    for (const SparseState& u : lz.basis) w.axpy(-inner(u, w), u);
  w.prune(0.0);
  const double b = w.norm();
  lz.beta.push_back(b);
  if (b < 1e-13) return false;
  w.scale(1.0 / b);
  lz.basis.push_back(std::move(w));
  return true;
}

Eigen::MatrixXd tridiagonal(const Lanczos& lz, std::size_t m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    t(i, i) = lz.alpha[j];
    if (j + 1 < m) t(i, i + 1) = t(i + 1, i) = lz.beta[j];
  }
  return t;
}

/// exp(-i T dt) e_1 for the leading m x m tridiagonal block.
Eigen::VectorXcd krylov_exp(const Lanczos& lz, std::size_t m, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal(lz, m));
  Eigen::VectorXcd c = es.eigenvectors().row(0).transpose().cast<cplx>();
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -es.eigenvalues()(k) * dt);
  return es.eigenvectors().cast<cplx>() * c;
}

void check_unit(double norm) {
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("initial state must have unit norm");
}

constexpr int kMaxKrylov = 40;
constexpr double kKrylovTol = 1e-14;
constexpr double kPruneTol = 1e-15;

}  // namespace

double estimate_norm(const SparseOperator& h, const SparseState& psi0, int iterations) {
  const double nrm = psi0.norm();
  if (nrm == 0.0) return 0.0;
  Lanczos lz;
  lz.basis.push_back(psi0);
  lz.basis.back().scale(1.0 / nrm);
  for (int k = 0; k < iterations; ++k)
    if (!lanczos_extend(h, lz)) break;
  const Eigen::MatrixXd t = tridiagonal(lz, lz.alpha.size());
  if (t.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

SparseState evolve(const SparseOperator& h, const SparseState& psi0, double T, double dt, EvolveStats* stats) {
  if (T < 0.0) throw std::invalid_argument("evolution time must be nonnegative");
  check_unit(psi0.norm());
  const double hnorm = estimate_norm(h, psi0);
  EvolveStats st;
  st.h_norm_est = hnorm;
  st.max_support = psi0.size();
  SparseState psi = psi0;
  if (hnorm == 0.0 || T == 0.0) {
    if (stats) *stats = st;
    return psi;
  }
  const double dt_max = 0.1 / hnorm;
  if (dt <= 0.0) dt = dt_max;
  if (dt > dt_max * (1.0 + 1e-12))
    throw std::invalid_argument("step-size guard: dt = " + std::to_string(dt) + " exceeds 0.1/||H|| = " +
                                std::to_string(dt_max));
  const int steps = static_cast<int>(std::ceil(T / dt - 1e-9));
  const double h_step = T / steps;
  st.dt = h_step;
  for (int s = 0; s < steps; ++s) {
    const double nrm = psi.norm();
    Lanczos lz;
    lz.basis.push_back(psi);
    lz.basis.back().scale(1.0 / nrm);
    Eigen::VectorXcd y;
    for (int m = 1; m <= kMaxKrylov; ++m) {
      const bool more = lanczos_extend(h, lz);
      y = krylov_exp(lz, static_cast<std::size_t>(m), h_step);
      // Residual estimate of the truncated Krylov exponential.
      if (!more || lz.beta.back() * std::abs(y(m - 1)) < kKrylovTol) break;
      if (m == kMaxKrylov) throw std::runtime_error("Krylov step did not converge");
    }
    SparseState next;
    for (Eigen::Index k = 0; k < y.size(); ++k) next.axpy(nrm * y(k), lz.basis[static_cast<std::size_t>(k)]);
    next.prune(kPruneTol);
    psi = std::move(next);
    st.max_support = std::max(st.max_support, psi.size());
    st.max_norm_drift = std::max(st.max_norm_drift, std::abs(psi.norm() - 1.0));
  }
  st.steps = steps;
  if (stats) *stats = st;
  return psi;
}

StateVector evolve(const TermList& h, const StateVector& psi0, double T, double dt, EvolveStats* stats) {
  const SiteRegister& reg = h.site_register();
  if (psi0.size() != reg.dense_dimension()) throw std::invalid_argument("state dimension mismatch");
  const SparseOperator op(h);
  return evolve(op, SparseState::from_dense(psi0, reg), T, dt, stats).to_dense(reg);
}

LineWalkOracle::LineWalkOracle(int n, int start) : n_(n) {
  if (n < 2) throw std::invalid_argument("path length must be at least 2");
  if (start < 0 || start >= n) throw std::invalid_argument("start vertex out of range");
  const double m = n + 1.0;
  evals_.resize(n);
  evecs_.resize(n, n);
  for (int k = 1; k <= n; ++k) {
    evals_(k - 1) = 2.0 * std::cos(std::numbers::pi * k / m);
    for (int j = 1; j <= n; ++j) evecs_(j - 1, k - 1) = std::sqrt(2.0 / m) * std::sin(std::numbers::pi * k * j / m);
  }
  overlap_ = evecs_.row(start).transpose();
  // The path spectrum is simple, so only diagonal pairs survive the average.
  limit_ = evecs_.cwiseAbs2() * overlap_.cwiseAbs2();
}

Eigen::VectorXcd LineWalkOracle::amplitudes(double t) const {
  Eigen::VectorXcd c(n_);
  for (int k = 0; k < n_; ++k) c(k) = overlap_(k) * std::polar(1.0, -evals_(k) * t);
  return evecs_.cast<cplx>() * c;
}

Eigen::VectorXd LineWalkOracle::time_avg_dist(double T) const {
  if (T < 0.0) throw std::invalid_argument("averaging window must be nonnegative");
  const Eigen::MatrixXd a = evecs_ * overlap_.asDiagonal();
  Eigen::MatrixXd k(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const double x = (evals_(i) - evals_(j)) * T;
      k(i, j) = std::abs(x) < 1e-10 ? 1.0 : std::sin(x) / x;
    }
  return (a * k).cwiseProduct(a).rowwise().sum();
}

double LineWalkOracle::averaging_bound() const {
  const Eigen::MatrixXd a = (evecs_ * overlap_.asDiagonal()).cwiseAbs();
  // |sin x / x| <= 1 / |x|; the path spectrum is simple.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l)
      if (k != l) w(k, l) = 1.0 / std::abs(evals_(k) - evals_(l));
  return 0.5 * (a * w).cwiseProduct(a).sum();
}

Eigen::MatrixXd LineWalkOracle::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int j = 0; j + 1 < n_; ++j) a(j, j + 1) = a(j + 1, j) = 1.0;
  return a;
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution size mismatch");
  return 0.5 * (p - q).cwiseAbs().sum();
}

Eigen::MatrixXcd comb_adjacency(int n) {
  const int g = n / 16;
  const int L = n - 1 - 10 * g;
  if (L < std::max(g, 1)) throw std::invalid_argument("comb needs at least 2 vertices per gadget");
  std::vector<Gate> gates(static_cast<std::size_t>(L), Gate::identity(0));
  for (int i = 0; i < g; ++i) gates[static_cast<std::size_t>((2 * i + 1) * L / (2 * g))] = Gate::cnot(0, 1);
  return expected_walk_graph(make_circuit(2, "00", std::move(gates)), Backend::Q23).adjacency;
}

namespace {

constexpr double kBudgetFactor = 1000.0;
constexpr int kPointsPerOctave = 64;

/// Returns {T_mix, certified}. `bound` is B in TV(T) <= B / T.
template <typename TV>
std::pair<double, bool> mixing_time(TV tv, double eps, double bound, double budget, int trials) {
  const double certified_at = bound / eps;
  const bool certified = certified_at <= budget;
  const double horizon = std::min(certified_at, budget);
  double last_bad = -1.0, next_good = 0.0;
  for (int i = 0;; ++i) {
    const double T = std::exp2(static_cast<double>(i) / kPointsPerOctave);
    if (T > horizon && i > 0) break;
    if (tv(T) > eps) {
      last_bad = T;
      next_good = -1.0;
    } else if (next_good < 0.0) {
      next_good = T;
    }
  }
  if (last_bad < 0.0) {
    last_bad = 0.0;
    next_good = 1.0;
  }
  if (next_good < 0.0) next_good = horizon;  // violated up to the horizon
  if (!certified && next_good >= horizon) return {budget, false};
  double lo = last_bad, hi = next_good;
  for (int k = 0; k < trials; ++k) {
    const double mid = 0.5 * (lo + hi);
    (tv(mid) <= eps ? hi : lo) = mid;
  }
  return {hi, certified};
}

void fit_loglog(const std::vector<int>& lengths, MixingFit& f) {
  const std::size_t m = lengths.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += std::log(lengths[i]);
    sy += std::log(f.t_mix[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(lengths[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(f.t_mix[i]) - my);
  }
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::log(f.t_mix[i]) - (f.intercept + f.exponent * std::log(lengths[i]));
    ssr += r * r;
  }
  f.exponent_stderr = m > 2 ? std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : kNaN;
  f.monotone = std::is_sorted(f.t_mix.begin(), f.t_mix.end());
}

}  // namespace

MixingEstimate estimate_mixing_scaling(const std::vector<int>& lengths, int trials) {
  if (lengths.size() < 4) throw std::invalid_argument("need ≥ 4 lengths");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] <= lengths[i - 1]) throw std::invalid_argument("lengths must be strictly increasing");
  if (lengths.front() < 2) throw std::invalid_argument("path length must be at least 2");
  if (lengths.back() < 2 * lengths.front()) throw std::invalid_argument("lengths must span at least one doubling");
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  MixingEstimate est;
  est.lengths = lengths;
  est.trials = trials;
  est.t_budget_factor = kBudgetFactor;
  for (int n : lengths) {
    const double eps = 1.0 / n;
    const double budget = kBudgetFactor * n * n;
    est.eps.push_back(eps);

    const LineWalkOracle line(n);
    auto [tp, cp] = mixing_time(
        [&](double T) { return total_variation(line.time_avg_dist(T), line.limiting_distribution()); }, eps,
        line.averaging_bound(), budget, trials);
    est.path.t_mix.push_back(tp);
    est.path.converged.push_back(cp);

    const SpectralPropagator comb(comb_adjacency(n));
    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(n);
    start(0) = 1.0;
    const Eigen::VectorXd limit = comb.limiting(start);
    auto [tc, cc] = mixing_time([&](double T) { return total_variation(comb.time_averaged(start, T), limit); }, eps,
                                comb.averaging_bound(start), budget, trials);
    est.comb.t_mix.push_back(tc);
    est.comb.converged.push_back(cc);
  }
  fit_loglog(lengths, est.path);
  fit_loglog(lengths, est.comb);
  return est;
}

ConditionalOutcome measure_success(const SparseState& psi, const ClockMap& clock, int n, int output_qubit,
                                   const WorkVector& target) {
  if (target.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("target dimension mismatch");
  // Work amplitudes grouped by the remaining (clock) configuration.
  std::map<Config, WorkVector> branches;
  double p = 0.0;
  for (const auto& [cfg, a] : psi.entries()) {
    bool success = false;
    for (int s : clock.success_stations) success = success || config_value(cfg, s) == 1;
    if (!success) continue;
    Config rest;
    Eigen::Index w = 0;
    for (const auto& [site, val] : cfg) {
      if (site < n)
        w |= Eigen::Index{1} << (n - 1 - site);
      else
        rest.emplace_back(site, val);
    }
    auto [it, fresh] = branches.try_emplace(std::move(rest));
    if (fresh) it->second = WorkVector::Zero(Eigen::Index{1} << n);
    it->second(w) += a;
    p += std::norm(a);
  }
  ConditionalOutcome out;
  out.p_success = p;
  if (p <= kSuccessFloor) {
    out.p_output_one = out.fidelity = kNaN;
    return out;
  }
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - output_qubit);
  double one = 0.0, overlap = 0.0;
  for (const auto& [rest, w] : branches) {
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (i & mask) one += std::norm(w(i));
    overlap += std::norm(target.dot(w));
  }
  out.p_output_one = one / p;
  out.fidelity = std::sqrt(overlap / p);
  return out;
}

EvolutionReport run_protocol(const Circuit& c, Backend backend, const ProtocolOptions& opt) {
  check_circuit(c);
  if (opt.samples < 1) throw std::invalid_argument("samples must be positive");
  const Circuit padded = pad_for_walk(c, backend, opt.padding);
  const Compiled compiled = compile(padded, backend);
  const SiteRegister& reg = compiled.hamiltonian.site_register();
  if (opt.full_space && reg.qubit_equivalents() > kDenseGuardQubits)
    throw ResourceGuardError("full-space evolution needs " + std::to_string(reg.qubit_equivalents()) +
                             " qubit equivalents, guard is " + std::to_string(kDenseGuardQubits));

  const WorkVector phi0 = initial_state(padded);
  const SubspaceBasis basis = build_computational_basis(padded, compiled, phi0);
  const Restriction r = restrict_hamiltonian(compiled.hamiltonian, basis);
  if (!r.closed) throw std::runtime_error("computational subspace is not invariant, residual " + std::to_string(r.residual));

  EvolutionReport rep;
  rep.backend = backend;
  rep.n = c.n;
  rep.useful_length = padded.useful_length;
  rep.padded_length = padded.length();
  rep.basis_size = basis.size();
  rep.seed = opt.seed;
  rep.full_space = opt.full_space;
  const double N = static_cast<double>(basis.size());
  rep.T = opt.time ? *opt.time : 4.0 * N * N;
  if (!(rep.T >= 0.0)) throw std::invalid_argument("evolution time must be nonnegative");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(0.0, rep.T);
  rep.times.resize(static_cast<std::size_t>(opt.samples));
  for (double& t : rep.times) t = uni(rng);
  std::sort(rep.times.begin(), rep.times.end());

  const WorkVector target = apply_circuit_prefix(padded, padded.useful_length, phi0);
  const SpectralPropagator prop(r.matrix);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(basis.size());
  e0(0) = 1.0;

  auto expand_restricted = [&](const Eigen::VectorXcd& a) {
    SparseState s;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) != cplx(0.0)) s.axpy(a(i), basis.sparse[static_cast<std::size_t>(i)]);
    return s;
  };

  std::optional<SparseOperator> op;
  SparseState full;
  double t_prev = 0.0;
  if (opt.full_space) {
    op.emplace(compiled.hamiltonian);
    full = basis.sparse[0];
  }
  rep.min_fidelity = kNaN;
  double sum_p = 0.0;
  for (double t : rep.times) {
    SparseState psi;
    if (opt.full_space) {
      full = evolve(*op, full, t - t_prev, opt.dt);
      t_prev = t;
      psi = full;
    } else {
      psi = expand_restricted(prop.state_at(e0, t));
    }
    const ConditionalOutcome o = measure_success(psi, compiled.clock, c.n, rep.output_qubit, target);
    rep.p_success.push_back(o.p_success);
    rep.p_output_one.push_back(o.p_output_one);
    rep.fidelity.push_back(o.fidelity);
    sum_p += o.p_success;
    if (!std::isnan(o.fidelity) && !(o.fidelity >= rep.min_fidelity)) rep.min_fidelity = o.fidelity;
  }
  rep.mean_p_success = sum_p / static_cast<double>(rep.times.size());

  const Eigen::VectorXd avg = prop.time_averaged(e0, rep.T);
  rep.clock_labels = basis.labels();
  rep.time_avg_clock_dist.assign(avg.data(), avg.data() + avg.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.vectors[i].station > rep.useful_length) rep.time_avg_p_success += avg(static_cast<Eigen::Index>(i));
  return rep;
}

}  // namespace hqc
