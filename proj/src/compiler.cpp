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

#include "hqc/compiler.hpp"

#include <cmath>
#include <numbers>

namespace hqc {

int ClockMap::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw std::out_of_range("no clock label '" + name + "'");
  return it->second;
}

void ClockMap::add(ClockLabel label) {
  if (by_name_.count(label.name)) throw std::invalid_argument("duplicate clock label '" + label.name + "'");
  by_name_.emplace(label.name, static_cast<int>(labels.size()));
  labels.push_back(std::move(label));
}

std::string station_label(int t) { return "t=" + std::to_string(t); }

std::string track_label(int t, char track, std::string_view stop) {
  return "t=" + std::to_string(t) + ":" + track + std::string(stop);
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

}  // namespace

CompileError::CompileError(std::vector<std::string> violations)
    : std::runtime_error("circuit rejected: " + join(violations)), violations_(std::move(violations)) {}

bool is_switch_gadget(const Gate& g, Backend backend) {
  switch (backend) {
    case Backend::F4: return false;
    case Backend::S3: return g.kind == GateKind::CNOT;
    case Backend::Q23:
    case Backend::Q22: return g.kind == GateKind::CNOT || g.kind == GateKind::BasisPhase;
  }
  return false;
}

int walk_edges(const Circuit& c, Backend backend, int t) {
  const int extra = backend == Backend::S3 ? 2 : (backend == Backend::F4 ? 0 : 8);
  int e = 0;
  for (int k = 0; k < t; ++k) e += 1 + (is_switch_gadget(c.gates[static_cast<std::size_t>(k)], backend) ? extra : 0);
  return e;
}

Circuit pad_for_walk(const Circuit& c, Backend backend, int factor) {
  if (factor < 1) throw std::invalid_argument("padding factor must be >= 1");
  const int e = walk_edges(c, backend, c.length());
  return pad_to_length(c, c.length() + (factor - 1) * e);
}

BackendCounts expected_counts(const Circuit& c, Backend backend) {
  const int n = c.n, L = c.length();
  int cnots = 0, phases = 0;
  for (const Gate& g : c.gates) {
    cnots += g.kind == GateKind::CNOT;
    phases += g.kind == GateKind::BasisPhase;
  }
  BackendCounts out;
  switch (backend) {
    case Backend::F4:
      out = {n + L + 1, static_cast<std::size_t>(L), L + 1};
      break;
    case Backend::S3:
      out = {n + L + 1 + 4 * cnots, static_cast<std::size_t>(L - cnots + 6 * cnots), L + 1 + 2 * cnots};
      break;
    case Backend::Q23: {
      const int g = cnots + phases;
      out = {n + L + 1 + 10 * g, static_cast<std::size_t>(L - g + 18 * g), L + 1 + 10 * g};
      break;
    }
    case Backend::Q22: {
      const int g = cnots + phases;
      out = {n + L + 1 + 16 * g, static_cast<std::size_t>(L - g + 59 * cnots + 46 * phases), L + 1 + 10 * g};
      break;
    }
  }
  return out;
}

namespace {

using Mat = Eigen::MatrixXcd;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat pauli_x() {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

Mat pauli_z() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

Mat cnot_matrix() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return m;
}

/// |01><10| on (from, to): moves the train from the first qubit to the second.
Mat qubit_forward() {
  Mat f = Mat::Zero(4, 4);
  f(1, 2) = 1.0;
  return f;
}

/// Forward hop with amplitude `a` plus its adjoint.
Mat qubit_hop(cplx a = 1.0) {
  Mat h = Mat::Zero(4, 4);
  h(1, 2) = a;
  h(2, 1) = std::conj(a);
  return h;
}

/// V (x) F + V^dagger (x) F^dagger.
Mat work_hop(const Mat& v, const Mat& forward) {
  return kron(v, forward) + kron(v.adjoint(), forward.adjoint());
}

// Qutrit local basis (O, A, B) = (0, 1, 2).

/// |0 A><1 O| + h.c. on (qubit, qutrit).
Mat qubit_to_qutrit_a() {
  Mat m = Mat::Zero(6, 6);
  m(1, 3) = m(3, 1) = 1.0;
  return m;
}

/// |O 1><B 0| + h.c. on (qutrit, qubit).
Mat qutrit_b_to_qubit() {
  Mat m = Mat::Zero(6, 6);
  m(1, 4) = m(4, 1) = 1.0;
  return m;
}

/// a|B><A| + conj(a)|A><B| on one qutrit.
Mat qutrit_internal(cplx a = 1.0) {
  Mat m = Mat::Zero(3, 3);
  m(2, 1) = a;
  m(1, 2) = std::conj(a);
  return m;
}

Mat to_mat(const Eigen::Matrix2cd& m) { return Mat(m); }

class Builder {
 public:
  Builder(const Circuit& c, Backend backend) : c_(c) {
    if (auto v = validate_for_backend(c, backend); !v.empty()) throw CompileError(std::move(v));
    check_circuit(c);
    SiteRegister& reg = out_.hamiltonian.site_register();
    for (int q = 0; q < c.n; ++q) reg.add(2, SiteRole::Work, "q" + std::to_string(q));
    for (int t = 0; t <= c.length(); ++t) {
      stations_.push_back(reg.add(2, SiteRole::Station, "c_" + std::to_string(t)));
      out_.clock.station_sites.push_back(stations_.back());
      if (t > c.useful_length) out_.clock.success_stations.push_back(stations_.back());
    }
    out_.backend = backend;
    out_.clock.useful_length = c.useful_length;
  }

  Compiled finish() {
    // Station labels interleaved with gadget labels in path order.
    ClockMap clock;
    clock.useful_length = out_.clock.useful_length;
    clock.station_sites = out_.clock.station_sites;
    clock.success_stations = out_.clock.success_stations;
    std::size_t next = 0;
    for (int t = 0; t <= c_.length(); ++t) {
      clock.add(ClockLabel{station_label(t), {ClockComponent{{{stations_[static_cast<std::size_t>(t)], 1}}, 1.0}}});
      for (; next < gadget_labels_.size() && gadget_labels_[next].first == t + 1; ++next)
        clock.add(gadget_labels_[next].second);
    }
    out_.clock = std::move(clock);
    return std::move(out_);
  }

  TermList& h() { return out_.hamiltonian; }
  SiteRegister& reg() { return out_.hamiltonian.site_register(); }
  int station(int t) const { return stations_[static_cast<std::size_t>(t)]; }
  void add_label(int t, ClockLabel label) { gadget_labels_.emplace_back(t, std::move(label)); }

  /// U_t (x) |t><t-1| + h.c. with the pulse clock; identities drop the work factor.
  void feynman_term(int t, const Gate& g) {
    const std::string tag = "F:t=" + std::to_string(t);
    const int prev = station(t - 1), cur = station(t);
    switch (g.kind) {
      case GateKind::Identity:
        h().add({prev, cur}, qubit_hop(), tag + ":id");
        break;
      case GateKind::CNOT:
        h().add({g.control, g.target, prev, cur}, work_hop(cnot_matrix(), qubit_forward()), tag + ":CNOT");
        break;
      case GateKind::SingleQubit:
      case GateKind::BasisPhase:
        h().add({g.target, prev, cur}, work_hop(to_mat(g.local_unitary()), qubit_forward()),
                tag + ":" + std::string(gate_kind_name(g.kind)));
        break;
    }
  }

 private:
  const Circuit& c_;
  Compiled out_;
  std::vector<int> stations_;
  std::vector<std::pair<int, ClockLabel>> gadget_labels_;
};

ClockLabel pulse_label(std::string name, int site, int value = 1) {
  return ClockLabel{std::move(name), {ClockComponent{{{site, static_cast<std::uint8_t>(value)}}, 1.0}}};
}

/// |A> -> (|01> + |10>)/sqrt2 and |B> -> (|01> - |10>)/sqrt2 on (u, u').
ClockLabel entangled_label(std::string name, int u, int u_prime, bool b_stop) {
  ClockLabel l{std::move(name), {}};
  l.components.push_back(ClockComponent{{{u_prime, 1}}, kInvSqrt2});
  l.components.push_back(ClockComponent{{{u, 1}}, b_stop ? -kInvSqrt2 : kInvSqrt2});
  return l;
}

// --- 3-local railroad switch ---------------------------------------------

void emit_switch3(Builder& b, int t, const Gate& g) {
  const std::string at = "@t=" + std::to_string(t);
  SiteRegister& reg = b.reg();
  const std::string gt = "@g" + std::to_string(t);
  const int u1 = reg.add(2, SiteRole::GadgetQubit, "u1" + gt);
  const int u2 = reg.add(2, SiteRole::GadgetQubit, "u2" + gt);
  const int l1 = reg.add(2, SiteRole::GadgetQubit, "l1" + gt);
  const int l2 = reg.add(2, SiteRole::GadgetQubit, "l2" + gt);
  const int prev = b.station(t - 1), cur = b.station(t);
  const Mat p0 = to_mat(g.branch_projector(0)), p1 = to_mat(g.branch_projector(1));

  b.h().add({g.control, prev, l1}, work_hop(p0, qubit_forward()), "sw:lower:in" + at);
  b.h().add({g.control, prev, u1}, work_hop(p1, qubit_forward()), "sw:upper:in" + at);
  b.h().add({g.control, l2, cur}, work_hop(p0, qubit_forward()), "sw:lower:out" + at);
  b.h().add({g.control, u2, cur}, work_hop(p1, qubit_forward()), "sw:upper:out" + at);
  b.h().add({g.target, u1, u2}, work_hop(pauli_x(), qubit_forward()), "sw:upper:X" + at);
  b.h().add({l1, l2}, qubit_hop(), "sw:lower:hop" + at);

  b.add_label(t, pulse_label(track_label(t, 'u', "1"), u1));
  b.add_label(t, pulse_label(track_label(t, 'u', "2"), u2));
  b.add_label(t, pulse_label(track_label(t, 'l', "1"), l1));
  b.add_label(t, pulse_label(track_label(t, 'l', "2"), l2));
}

// --- two-track gadgets (qubit/qutrit and qubit/qubit) ----------------------

/// Sites of one track. Qutrit stops u1, u3, u5 are either a single qutrit
/// site (second == -1) or a pair of qubits.
struct Track {
  char name;
  std::pair<int, int> s1, s3, s5;
  int s2, s4;
  bool pulse_middle = false;  // s3 holds (u3A, u3B) as a pulse pair
};

struct TrackOps {
  Eigen::Matrix2cd projector;  // train-master branch selector
  bool flip_target = false;    // CNOT upper track
  cplx middle_phase = 1.0;     // BasisPhase upper track
};

class GadgetEmitter {
 public:
  GadgetEmitter(Builder& b, int t, const Gate& g, bool qubits_only)
      : b_(b), t_(t), g_(g), qubits_only_(qubits_only) {}

  void emit() {
    Track up = make_track('u');
    Track lo = make_track('l');
    TrackOps up_ops{g_.branch_projector(1), g_.kind == GateKind::CNOT,
                    g_.kind == GateKind::BasisPhase ? std::polar(1.0, g_.theta) : cplx(1.0)};
    TrackOps lo_ops{g_.branch_projector(0), false, 1.0};
    emit_track(up, up_ops);
    emit_track(lo, lo_ops);
    add_labels(up);
    add_labels(lo);
  }

 private:
  std::string site_name(char track, std::string_view stop) const {
    return std::string(1, track) + std::string(stop) + "@g" + std::to_string(t_);
  }

  std::pair<int, int> add_qutrit(char track, const char* stop) {
    SiteRegister& reg = b_.reg();
    if (!qubits_only_) return {reg.add(3, SiteRole::GadgetQutrit, site_name(track, stop)), -1};
    const int a = reg.add(2, SiteRole::GadgetQubit, site_name(track, stop));
    const int b = reg.add(2, SiteRole::GadgetQubit, site_name(track, std::string(stop) + "'"));
    return {a, b};
  }

  Track make_track(char name) {
    SiteRegister& reg = b_.reg();
    Track tr{name, {}, {}, {}, 0, 0};
    tr.s1 = add_qutrit(name, "1");
    tr.s2 = reg.add(2, SiteRole::GadgetQubit, site_name(name, "2"));
    if (qubits_only_ && g_.kind == GateKind::BasisPhase) {
      tr.pulse_middle = true;
      tr.s3 = {reg.add(2, SiteRole::GadgetQubit, site_name(name, "3A")),
               reg.add(2, SiteRole::GadgetQubit, site_name(name, "3B"))};
    } else {
      tr.s3 = add_qutrit(name, "3");
    }
    tr.s4 = reg.add(2, SiteRole::GadgetQubit, site_name(name, "4"));
    tr.s5 = add_qutrit(name, "5");
    return tr;
  }

  std::string tag(char track, const std::string& what) const {
    const std::string fam = qubits_only_ ? "H22" : "H23";
    return fam + track + ":t=" + std::to_string(t_) + ":" + what;
  }

  // Train moves from qubit `a` onto stop A of a qutrit.
  void qubit_to_a(char track, int a, std::pair<int, int> q, const std::string& what) {
    if (q.second < 0) {
      b_.h().add({a, q.first}, qubit_to_qutrit_a(), tag(track, what));
      return;
    }
    // |1>|00> <-> |0>|+>: four 2-local summands, coefficient 1/sqrt2 each.
    Mat fwd = Mat::Zero(4, 4);
    fwd(1, 2) = kInvSqrt2;  // |0><1|_a (x) |1><0|_u
    const Mat bwd = fwd.adjoint();
    b_.h().add({a, q.first}, fwd, tag(track, what + "#1"));
    b_.h().add({a, q.second}, fwd, tag(track, what + "#2"));
    b_.h().add({a, q.first}, bwd, tag(track, what + "#1:c.c."));
    b_.h().add({a, q.second}, bwd, tag(track, what + "#2:c.c."));
  }

  // Train moves from stop B of a qutrit onto qubit `a`.
  void b_to_qubit(char track, std::pair<int, int> q, int a, const std::string& what) {
    if (q.second < 0) {
      b_.h().add({q.first, a}, qutrit_b_to_qubit(), tag(track, what));
      return;
    }
    // |->|0> <-> |00>|1>; the u-qubit summand carries the minus sign of |->.
    Mat fwd_u = Mat::Zero(4, 4), fwd_up = Mat::Zero(4, 4);
    fwd_u(1, 2) = -kInvSqrt2;  // |0><1|_u (x) |1><0|_a
    fwd_up(1, 2) = kInvSqrt2;
    b_.h().add({q.first, a}, fwd_u, tag(track, what + "#1"));
    b_.h().add({q.second, a}, fwd_up, tag(track, what + "#2"));
    b_.h().add({q.first, a}, fwd_u.adjoint(), tag(track, what + "#1:c.c."));
    b_.h().add({q.second, a}, fwd_up.adjoint(), tag(track, what + "#2:c.c."));
  }

  // A <-> B inside a qutrit, with optional work factor V on qubit `work`.
  void internal(char track, std::pair<int, int> q, int work, const Mat* v, const std::string& what) {
    if (q.second < 0) {
      if (v)
        b_.h().add({work, q.first}, kron(*v, qutrit_internal()), tag(track, what));
      else
        b_.h().add({q.first}, qutrit_internal(), tag(track, what));
      return;
    }
    // (Z1 - Z2)/2 (x) V maps |+> <-> |-> and annihilates |00>, |11>.
    const Mat half_z = 0.5 * pauli_z();
    if (v) {
      b_.h().add({work, q.first}, kron(*v, half_z), tag(track, what + "#1"));
      b_.h().add({work, q.second}, kron(*v, -half_z), tag(track, what + "#2"));
    } else {
      const Mat id = Mat::Identity(2, 2);
      b_.h().add({q.first, q.second}, kron(half_z, id) - kron(id, half_z), tag(track, what));
    }
  }

  void emit_track(const Track& tr, const TrackOps& ops) {
    const char k = tr.name;
    const int master = g_.train_master();
    const Mat proj = to_mat(ops.projector);
    const int prev = b_.station(t_ - 1), cur = b_.station(t_);

    qubit_to_a(k, prev, tr.s1, "in(c->1A)");
    internal(k, tr.s1, master, &proj, "ctl(1A->1B)");
    b_to_qubit(k, tr.s1, tr.s2, "hop(1B->2)");
    if (tr.pulse_middle) {
      b_.h().add({tr.s2, tr.s3.first}, qubit_hop(), tag(k, "hop(2->3A)"));
      b_.h().add({tr.s3.first, tr.s3.second}, qubit_hop(ops.middle_phase), tag(k, "phase(3A->3B)"));
      b_.h().add({tr.s3.second, tr.s4}, qubit_hop(), tag(k, "hop(3B->4)"));
    } else {
      qubit_to_a(k, tr.s2, tr.s3, "hop(2->3A)");
      if (ops.flip_target) {
        const Mat x = pauli_x();
        internal(k, tr.s3, g_.target, &x, "X(3A->3B)");
      } else if (tr.s3.second < 0) {
        b_.h().add({tr.s3.first}, qutrit_internal(ops.middle_phase),
                   tag(k, ops.middle_phase == cplx(1.0) ? "hop(3A->3B)" : "phase(3A->3B)"));
      } else {
        internal(k, tr.s3, -1, nullptr, "hop(3A->3B)");
      }
      b_to_qubit(k, tr.s3, tr.s4, "hop(3B->4)");
    }
    qubit_to_a(k, tr.s4, tr.s5, "hop(4->5A)");
    internal(k, tr.s5, master, &proj, "ctl(5A->5B)");
    b_to_qubit(k, tr.s5, cur, "out(5B->c)");
  }

  ClockLabel stop_label(const Track& tr, std::pair<int, int> q, bool b_stop, std::string_view stop) {
    const std::string name = track_label(t_, tr.name, stop);
    if (q.second < 0) return pulse_label(name, q.first, b_stop ? 2 : 1);
    return entangled_label(name, q.first, q.second, b_stop);
  }

  void add_labels(const Track& tr) {
    b_.add_label(t_, stop_label(tr, tr.s1, false, "1A"));
    b_.add_label(t_, stop_label(tr, tr.s1, true, "1B"));
    b_.add_label(t_, pulse_label(track_label(t_, tr.name, "2"), tr.s2));
    if (tr.pulse_middle) {
      b_.add_label(t_, pulse_label(track_label(t_, tr.name, "3A"), tr.s3.first));
      b_.add_label(t_, pulse_label(track_label(t_, tr.name, "3B"), tr.s3.second));
    } else {
      b_.add_label(t_, stop_label(tr, tr.s3, false, "3A"));
      b_.add_label(t_, stop_label(tr, tr.s3, true, "3B"));
    }
    b_.add_label(t_, pulse_label(track_label(t_, tr.name, "4"), tr.s4));
    b_.add_label(t_, stop_label(tr, tr.s5, false, "5A"));
    b_.add_label(t_, stop_label(tr, tr.s5, true, "5B"));
  }

  Builder& b_;
  int t_;
  const Gate& g_;
  bool qubits_only_;
};

Compiled compile_with(const Circuit& c, Backend backend) {
  Builder b(c, backend);
  for (int t = 1; t <= c.length(); ++t) {
    const Gate& g = c.gates[static_cast<std::size_t>(t - 1)];
    if (!is_switch_gadget(g, backend)) {
      b.feynman_term(t, g);
    } else if (backend == Backend::S3) {
      emit_switch3(b, t, g);
    } else {
      GadgetEmitter(b, t, g, backend == Backend::Q22).emit();
    }
  }
  return b.finish();
}

}  // namespace

Compiled compile_feynman4(const Circuit& c) { return compile_with(c, Backend::F4); }
Compiled compile_switch3(const Circuit& c) { return compile_with(c, Backend::S3); }
Compiled compile_qutrit2(const Circuit& c) { return compile_with(c, Backend::Q23); }
Compiled compile_qubit2(const Circuit& c) { return compile_with(c, Backend::Q22); }

Compiled compile(const Circuit& c, Backend backend) { return compile_with(c, backend); }

}  // namespace hqc
