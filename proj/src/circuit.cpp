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

#include "hqc/circuit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hqc {

Gate Gate::identity(int q) {
  Gate g;
  g.kind = GateKind::Identity;
  g.target = q;
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.control = control;
  g.target = target;
  return g;
}

Gate Gate::single_qubit(int q, const Eigen::Matrix2cd& u) {
  Gate g;
  g.kind = GateKind::SingleQubit;
  g.target = q;
  g.matrix = u;
  return g;
}

Gate Gate::basis_phase(int q, double theta, const Eigen::Matrix2cd& basis) {
  Gate g;
  g.kind = GateKind::BasisPhase;
  g.target = q;
  g.theta = theta;
  g.matrix = basis;
  return g;
}

Eigen::Matrix2cd Gate::local_unitary() const {
  switch (kind) {
    case GateKind::SingleQubit:
      return matrix;
    case GateKind::BasisPhase: {
      Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
      d(0, 0) = 1.0;
      d(1, 1) = std::polar(1.0, theta);
      return matrix * d * matrix.adjoint();
    }
    default:
      return Eigen::Matrix2cd::Identity();
  }
}

Eigen::Matrix2cd Gate::branch_projector(int b) const {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(b, b) = 1.0;
  if (kind == GateKind::BasisPhase) return matrix * p * matrix.adjoint();
  return p;
}

std::string_view gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Identity: return "ID";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SingleQubit: return "U1";
    case GateKind::BasisPhase: return "W";
  }
  return "?";
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::F4: return "f4";
    case Backend::S3: return "s3";
    case Backend::Q23: return "q23";
    case Backend::Q22: return "q22";
  }
  return "?";
}

Backend parse_backend(std::string_view s) {
  if (s == "f4" || s == "F4") return Backend::F4;
  if (s == "s3" || s == "S3") return Backend::S3;
  if (s == "q23" || s == "Q23") return Backend::Q23;
  if (s == "q22" || s == "Q22") return Backend::Q22;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

bool is_unitary(const Eigen::Matrix2cd& u, double tol) {
  const Eigen::Matrix2cd d = u.adjoint() * u - Eigen::Matrix2cd::Identity();
  return d.cwiseAbs().maxCoeff() <= tol;
}

namespace {

std::string gate_problem(const Gate& g, int n) {
  auto in_range = [n](int q) { return q >= 0 && q < n; };
  if (!in_range(g.target)) return "qubit index " + std::to_string(g.target) + " out of range";
  if (g.kind == GateKind::CNOT) {
    if (!in_range(g.control)) return "qubit index " + std::to_string(g.control) + " out of range";
    if (g.control == g.target) return "CNOT control equals target";
  }
  if ((g.kind == GateKind::SingleQubit || g.kind == GateKind::BasisPhase) && !is_unitary(g.matrix))
    return "matrix is not unitary";
  return {};
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "expected integer, got '" + s + "'");
  return v;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(line, "expected number, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "expected number, got '" + s + "'");
  }
}

Eigen::Matrix2cd parse_matrix(const std::vector<std::string>& tok, std::size_t from, int line) {
  if (tok.size() != from + 8) throw ParseError(line, "expected 8 numbers for a 2x2 complex matrix");
  Eigen::Matrix2cd m;
  for (int k = 0; k < 4; ++k)
    m(k / 2, k % 2) = cplx(parse_double(tok[from + 2 * k], line), parse_double(tok[from + 2 * k + 1], line));
  return m;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Circuit make_circuit(int n, std::string input, std::vector<Gate> gates) {
  Circuit c;
  c.n = n;
  c.input = std::move(input);
  c.gates = std::move(gates);
  c.useful_length = c.length();
  return c;
}

void check_circuit(const Circuit& c) {
  if (c.n < 1) throw std::invalid_argument("circuit needs at least one work qubit");
  if (c.gates.empty()) throw std::invalid_argument("circuit needs at least one gate");
  if (static_cast<int>(c.input.size()) != c.n)
    throw std::invalid_argument("input string length differs from qubit count");
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    auto p = gate_problem(c.gates[i], c.n);
    if (!p.empty()) throw std::invalid_argument("gate " + std::to_string(i + 1) + ": " + p);
  }
  if (c.useful_length < 0 || c.useful_length > c.length())
    throw std::invalid_argument("useful_length outside [0, L]");
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_qubits = false;
  bool have_input = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;

    const std::string& kw = tok[0];
    if (kw == "qubits") {
      if (have_qubits) throw ParseError(line_no, "duplicate 'qubits' line");
      if (tok.size() != 2) throw ParseError(line_no, "usage: qubits <n>");
      c.n = parse_int(tok[1], line_no);
      if (c.n < 1) throw ParseError(line_no, "qubit count must be positive");
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw ParseError(line_no, "'qubits' must come first");
    if (kw == "input") {
      if (tok.size() != 2) throw ParseError(line_no, "usage: input <bitstring>");
      if (static_cast<int>(tok[1].size()) != c.n) throw ParseError(line_no, "input length differs from qubit count");
      if (tok[1].find_first_not_of("01") != std::string::npos) throw ParseError(line_no, "input must be a bit string");
      c.input = tok[1];
      have_input = true;
      continue;
    }
    if (kw != "gate") throw ParseError(line_no, "unknown keyword '" + kw + "'");
    if (tok.size() < 3) throw ParseError(line_no, "gate needs a kind and a qubit");

    const std::string& kind = tok[1];
    Gate g;
    if (kind == "ID") {
      if (tok.size() != 3) throw ParseError(line_no, "usage: gate ID <q>");
      g = Gate::identity(parse_int(tok[2], line_no));
    } else if (kind == "CNOT") {
      if (tok.size() != 4) throw ParseError(line_no, "usage: gate CNOT <control> <target>");
      g = Gate::cnot(parse_int(tok[2], line_no), parse_int(tok[3], line_no));
    } else if (kind == "U1") {
      g = Gate::single_qubit(parse_int(tok[2], line_no), parse_matrix(tok, 3, line_no));
    } else if (kind == "W") {
      if (tok.size() < 5) throw ParseError(line_no, "usage: gate W <q> <theta> <Z | 8 numbers>");
      int q = parse_int(tok[2], line_no);
      double theta = parse_double(tok[3], line_no);
      Eigen::Matrix2cd b = Eigen::Matrix2cd::Identity();
      if (!(tok.size() == 5 && tok[4] == "Z")) b = parse_matrix(tok, 4, line_no);
      g = Gate::basis_phase(q, theta, b);
    } else {
      throw ParseError(line_no, "unknown gate kind '" + kind + "'");
    }
    if (auto p = gate_problem(g, c.n); !p.empty()) throw ParseError(line_no, p);
    c.gates.push_back(g);
  }
  if (!have_qubits) throw ParseError(line_no, "missing 'qubits' line");
  if (c.gates.empty()) throw ParseError(line_no, "circuit has no gates");
  if (!have_input) c.input.assign(c.n, '0');
  c.useful_length = c.length();
  return c;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n << "\n";
  os << "input " << c.input << "\n";
  for (const Gate& g : c.gates) {
    os << "gate " << gate_kind_name(g.kind) << ' ';
    switch (g.kind) {
      case GateKind::Identity:
        os << g.target;
        break;
      case GateKind::CNOT:
        os << g.control << ' ' << g.target;
        break;
      case GateKind::SingleQubit:
      case GateKind::BasisPhase:
        os << g.target;
        if (g.kind == GateKind::BasisPhase) os << ' ' << fmt_double(g.theta);
        if (g.kind == GateKind::BasisPhase && g.matrix == Eigen::Matrix2cd::Identity()) {
          os << " Z";
        } else {
          for (int k = 0; k < 4; ++k)
            os << ' ' << fmt_double(g.matrix(k / 2, k % 2).real()) << ' '
               << fmt_double(g.matrix(k / 2, k % 2).imag());
        }
        break;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> validate_for_backend(const Circuit& c, Backend backend) {
  std::vector<std::string> out;
  const bool two_local = backend == Backend::Q23 || backend == Backend::Q22;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const std::string where = "gate " + std::to_string(i + 1) + " (" + std::string(gate_kind_name(g.kind)) + "): ";
    if (auto p = gate_problem(g, c.n); !p.empty()) out.push_back(where + p);
    if (two_local && g.kind == GateKind::SingleQubit)
      out.push_back(where + "no 2-local gadget for general 1-qubit unitary");
  }
  return out;
}

Circuit pad_to_length(const Circuit& c, int total_length) {
  if (total_length < c.length()) throw std::invalid_argument("padding cannot shorten a circuit");
  Circuit out = c;
  out.useful_length = c.useful_length;
  out.gates.resize(static_cast<std::size_t>(total_length), Gate::identity(0));
  return out;
}

Circuit pad_with_identities(const Circuit& c, int factor) {
  if (factor < 1) throw std::invalid_argument("padding factor must be >= 1");
  return pad_to_length(c, factor * c.length());
}

WorkVector initial_state(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  WorkVector psi = WorkVector::Zero(dim);
  Eigen::Index idx = 0;
  for (char ch : c.input) idx = (idx << 1) | (ch == '1' ? 1 : 0);
  psi(idx) = 1.0;
  return psi;
}

void apply_gate(const Gate& g, int n, WorkVector& psi) {
  const Eigen::Index dim = psi.size();
  auto bit = [n](int q) { return Eigen::Index{1} << (n - 1 - q); };
  switch (g.kind) {
    case GateKind::Identity:
      return;
    case GateKind::CNOT: {
      const Eigen::Index cm = bit(g.control), tm = bit(g.target);
      for (Eigen::Index i = 0; i < dim; ++i)
        if ((i & cm) && !(i & tm)) std::swap(psi(i), psi(i | tm));
      return;
    }
    case GateKind::SingleQubit:
    case GateKind::BasisPhase: {
      const Eigen::Matrix2cd u = g.local_unitary();
      const Eigen::Index tm = bit(g.target);
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & tm) continue;
        const cplx a = psi(i), b = psi(i | tm);
        psi(i) = u(0, 0) * a + u(0, 1) * b;
        psi(i | tm) = u(1, 0) * a + u(1, 1) * b;
      }
      return;
    }
  }
}

WorkVector apply_circuit_prefix(const Circuit& c, int t, const WorkVector& psi) {
  if (psi.size() != (Eigen::Index{1} << c.n)) throw std::invalid_argument("work state dimension mismatch");
  if (t < 0 || t > c.length()) throw std::out_of_range("prefix length outside [0, L]");
  WorkVector out = psi;
  for (int k = 0; k < t; ++k) apply_gate(c.gates[static_cast<std::size_t>(k)], c.n, out);
  return out;
}

}  // namespace hqc
