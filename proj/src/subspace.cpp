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

#include "hqc/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace hqc {

std::vector<std::string> SubspaceBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(v.label);
  return out;
}

int SubspaceBasis::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].label == label) return static_cast<int>(i);
  throw std::out_of_range("no basis vector '" + label + "'");
}

namespace {

std::string history_label(int t) { return "psi_" + std::to_string(t); }
std::string gadget_label(int t, std::string_view stop) { return "t=" + std::to_string(t) + ":" + std::string(stop); }

/// Applies a 2x2 operator to qubit q of the work register.
WorkVector apply_local(const Eigen::Matrix2cd& u, int q, int n, const WorkVector& psi) {
  WorkVector out = psi;
  const Eigen::Index tm = Eigen::Index{1} << (n - 1 - q);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & tm) continue;
    out(i) = u(0, 0) * psi(i) + u(0, 1) * psi(i | tm);
    out(i | tm) = u(1, 0) * psi(i) + u(1, 1) * psi(i | tm);
  }
  return out;
}

class BasisBuilder {
 public:
  BasisBuilder(const Compiled& compiled, int n) : clock_(compiled.clock) {
    basis_.backend = compiled.backend;
    basis_.n = n;
  }

  int label(const std::string& name) const {
    try {
      return clock_.index_of(name);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("backend/circuit mismatch: clock label '" + name + "' missing");
    }
  }

  void history(int t, const WorkVector& w) {
    basis_.vectors.push_back(BasisVector{history_label(t), {BasisComponent{w, label(station_label(t))}}, t});
  }

  /// lower (x) |track l> + upper (x) |track u>
  void two_track(std::string name, const WorkVector& lower, const std::string& l_stop, const WorkVector& upper,
                 const std::string& u_stop) {
    basis_.vectors.push_back(
        BasisVector{std::move(name), {BasisComponent{lower, label(l_stop)}, BasisComponent{upper, label(u_stop)}}, -1});
  }

  SubspaceBasis finish() {
    for (const auto& v : basis_.vectors) basis_.sparse.push_back(expand(v, clock_, basis_.n));
    return std::move(basis_);
  }

 private:
  const ClockMap& clock_;
  SubspaceBasis basis_;
};

}  // namespace

SparseState expand(const BasisVector& v, const ClockMap& clock, int n) {
  SparseState out;
  for (const BasisComponent& part : v.parts) {
    const ClockLabel& lab = clock.labels.at(static_cast<std::size_t>(part.clock_label));
    for (Eigen::Index w = 0; w < part.work.size(); ++w) {
      if (part.work(w) == cplx(0.0)) continue;
      for (const ClockComponent& cc : lab.components) {
        Config cfg;
        for (int q = 0; q < n; ++q)
          if ((w >> (n - 1 - q)) & 1) cfg.emplace_back(q, 1);
        for (const auto& e : cc.excited) cfg.push_back(e);
        std::sort(cfg.begin(), cfg.end());
        out.add(cfg, part.work(w) * cc.amp);
      }
    }
  }
  out.prune(0.0);
  return out;
}

SubspaceBasis build_computational_basis(const Circuit& c, const Compiled& compiled) {
  return build_computational_basis(c, compiled, initial_state(c));
}

SubspaceBasis build_computational_basis(const Circuit& c, const Compiled& compiled, const WorkVector& phi0) {
  if (phi0.size() != (Eigen::Index{1} << c.n)) throw std::invalid_argument("initial work state dimension mismatch");
  if (static_cast<int>(compiled.clock.station_sites.size()) != c.length() + 1)
    throw std::invalid_argument("backend/circuit mismatch: station count differs from L + 1");
  for (int q = 0; q < c.n; ++q)
    if (q >= compiled.hamiltonian.site_register().size() ||
        compiled.hamiltonian.site_register().site(q).role != SiteRole::Work)
      throw std::invalid_argument("backend/circuit mismatch: work qubits must be the leading sites");

  const Backend be = compiled.backend;
  BasisBuilder bb(compiled, c.n);
  WorkVector phi = phi0;
  cplx gauge = 1.0;
  bb.history(0, phi);

  for (int t = 1; t <= c.length(); ++t) {
    const Gate& g = c.gates[static_cast<std::size_t>(t - 1)];
    if (!is_switch_gadget(g, be)) {
      apply_gate(g, c.n, phi);
      bb.history(t, gauge * phi);
      continue;
    }
    const int master = g.train_master();
    const WorkVector lower = apply_local(g.branch_projector(0), master, c.n, phi);
    const WorkVector upper = apply_local(g.branch_projector(1), master, c.n, phi);
    WorkVector upper_after = upper;
    cplx gauge_after = gauge;
    if (g.kind == GateKind::CNOT) {
      Eigen::Matrix2cd x;
      x << 0, 1, 1, 0;
      upper_after = apply_local(x, g.target, c.n, upper);
    } else {
      upper_after = std::polar(1.0, g.theta) * upper;
      gauge_after = gauge * std::polar(1.0, -g.theta);
    }

    if (be == Backend::S3) {
      bb.two_track(gadget_label(t, "1"), gauge * lower, track_label(t, 'l', "1"), gauge * upper,
                   track_label(t, 'u', "1"));
      bb.two_track(gadget_label(t, "2"), gauge * lower, track_label(t, 'l', "2"), gauge * upper_after,
                   track_label(t, 'u', "2"));
    } else {
      for (std::size_t k = 0; k < kTrackStops.size(); ++k) {
        const std::string stop = kTrackStops[k];
        const bool after = k >= 4;  // 3B onwards
        const cplx gg = after ? gauge_after : gauge;
        bb.two_track(gadget_label(t, stop), gg * lower, track_label(t, 'l', stop), gg * (after ? upper_after : upper),
                     track_label(t, 'u', stop));
      }
      // Blind alleys: each branch sits at the entry/exit stop of the wrong track.
      bb.two_track(gadget_label(t, "1x"), gauge * upper, track_label(t, 'l', "1A"), gauge * lower,
                   track_label(t, 'u', "1A"));
      bb.two_track(gadget_label(t, "5x"), gauge_after * upper_after, track_label(t, 'l', "5B"), gauge_after * lower,
                   track_label(t, 'u', "5B"));
    }
    phi = lower + upper_after;
    gauge = gauge_after;
    bb.history(t, gauge * phi);
  }
  return bb.finish();
}

Eigen::MatrixXcd gram_matrix(const SubspaceBasis& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = inner(b.sparse[static_cast<std::size_t>(i)], b.sparse[static_cast<std::size_t>(j)]);
  return g;
}

namespace {

struct Projection {
  Eigen::MatrixXcd matrix;
  double residual = 0.0;
};

Projection project(const TermList& h, const SubspaceBasis& b) {
  for (const auto& v : b.sparse)
    for (const auto& [cfg, a] : v.entries())
      if (!cfg.empty() && cfg.back().first >= h.site_register().size())
        throw std::invalid_argument("register mismatch between Hamiltonian and basis");
  const SparseOperator op(h);
  const auto n = static_cast<Eigen::Index>(b.size());
  Projection out;
  out.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    SparseState hv = op.apply(b.sparse[static_cast<std::size_t>(j)]);
    SparseState rest = hv;
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx m = inner(b.sparse[static_cast<std::size_t>(i)], hv);
      out.matrix(i, j) = m;
      if (m != cplx(0.0)) rest.axpy(-m, b.sparse[static_cast<std::size_t>(i)]);
    }
    out.residual = std::max(out.residual, rest.norm());
  }
  return out;
}

}  // namespace

double verify_invariance(const TermList& h, const SubspaceBasis& b) { return project(h, b).residual; }

Restriction restrict_hamiltonian(const TermList& h, const SubspaceBasis& b) {
  Projection p = project(h, b);
  Restriction r;
  r.matrix = std::move(p.matrix);
  r.labels = b.labels();
  r.residual = p.residual;
  r.closed = p.residual <= kClosureTol;
  return r;
}

WalkGraph expected_walk_graph(const Circuit& c, Backend backend) {
  WalkGraph g;
  std::vector<std::tuple<int, int, cplx>> edges;  // (to, from, <to|H|from>)
  auto vertex = [&g](std::string name) {
    g.labels.push_back(std::move(name));
    return static_cast<int>(g.labels.size()) - 1;
  };
  int prev = vertex(history_label(0));
  for (int t = 1; t <= c.length(); ++t) {
    const Gate& gate = c.gates[static_cast<std::size_t>(t - 1)];
    if (!is_switch_gadget(gate, backend)) {
      const int cur = vertex(history_label(t));
      edges.emplace_back(cur, prev, 1.0);
      prev = cur;
      continue;
    }
    std::vector<int> path{prev};
    if (backend == Backend::S3) {
      path.push_back(vertex(gadget_label(t, "1")));
      path.push_back(vertex(gadget_label(t, "2")));
    } else {
      for (const char* stop : kTrackStops) path.push_back(vertex(gadget_label(t, stop)));
    }
    const int entry_alley = backend == Backend::S3 ? -1 : vertex(gadget_label(t, "1x"));
    const int exit_alley = backend == Backend::S3 ? -1 : vertex(gadget_label(t, "5x"));
    const int cur = vertex(history_label(t));
    path.push_back(cur);
    for (std::size_t k = 1; k < path.size(); ++k) {
      cplx w = 1.0;
      // path[4] = 3A, path[5] = 3B
      if (backend != Backend::S3 && gate.kind == GateKind::BasisPhase && k == 5) w = std::polar(1.0, gate.theta);
      edges.emplace_back(path[k], path[k - 1], w);
    }
    if (entry_alley >= 0) {
      edges.emplace_back(entry_alley, prev, 1.0);
      edges.emplace_back(exit_alley, cur, 1.0);
    }
    prev = cur;
  }
  const auto n = static_cast<Eigen::Index>(g.labels.size());
  g.adjacency = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [to, from, w] : edges) {
    g.adjacency(to, from) = w;
    g.adjacency(from, to) = std::conj(w);
  }
  return g;
}

double max_entry_error(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

VerifyReport verify(const Circuit& c, const Compiled& compiled) {
  const SubspaceBasis basis = build_computational_basis(c, compiled);
  const Restriction r = restrict_hamiltonian(compiled.hamiltonian, basis);
  const WalkGraph g = expected_walk_graph(c, compiled.backend);
  VerifyReport rep;
  rep.backend = compiled.backend;
  rep.residual = r.residual;
  rep.basis_size = basis.size();
  rep.max_entry_error = max_entry_error(r.matrix, g.adjacency);
  rep.restriction_match = r.labels == g.labels && rep.max_entry_error <= kClosureTol;
  return rep;
}

}  // namespace hqc
