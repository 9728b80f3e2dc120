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

#include <gtest/gtest.h>

#include <set>

#include "hqc/compiler.hpp"
#include "support.hpp"

namespace hqc {
namespace {

std::vector<const Term*> with_tag_prefix(const TermList& h, const std::string& prefix) {
  std::vector<const Term*> out;
  for (const Term& t : h.terms())
    if (t.tag.rfind(prefix, 0) == 0) out.push_back(&t);
  return out;
}

int count_role(const SiteRegister& reg, SiteRole r, int dim) {
  int n = 0;
  for (const Site& s : reg.sites()) n += s.role == r && s.dim == dim;
  return n;
}

TEST(Feynman, IdentityCircuitIsPureClockHops) {
  const Compiled c = compile_feynman4(testing::identities(1, 2));
  EXPECT_EQ(c.hamiltonian.site_register().size(), 4);
  ASSERT_EQ(c.hamiltonian.size(), 2u);
  for (const Term& t : c.hamiltonian.terms()) {
    EXPECT_EQ(t.sites.size(), 2u);
    Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(4, 4);
    hop(1, 2) = hop(2, 1) = 1.0;
    EXPECT_EQ(t.matrix, hop);
  }
  EXPECT_EQ(c.hamiltonian.terms()[0].sites, (std::vector<int>{1, 2}));
}

TEST(Feynman, CnotIsOneArityFourTerm) {
  const Compiled c = compile_feynman4(testing::one_cnot());
  EXPECT_EQ(c.hamiltonian.site_register().size(), 4);
  ASSERT_EQ(c.hamiltonian.size(), 1u);
  EXPECT_EQ(c.hamiltonian.terms()[0].sites, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(c.hamiltonian.terms()[0].tag, "F:t=1:CNOT");
}

TEST(Switch3, CnotGadget) {
  const Compiled c = compile_switch3(testing::one_cnot());
  EXPECT_EQ(c.hamiltonian.site_register().size(), 2 + 2 + 4);
  EXPECT_EQ(c.hamiltonian.size(), 6u);
  std::set<std::string> tags;
  for (const Term& t : c.hamiltonian.terms()) {
    EXPECT_LE(t.sites.size(), 3u);
    EXPECT_LE((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff(), 0.0) << t.tag;
    tags.insert(t.tag.substr(0, t.tag.find('@')));
  }
  EXPECT_EQ(tags, (std::set<std::string>{"sw:lower:in", "sw:upper:in", "sw:lower:out", "sw:upper:out", "sw:upper:X",
                                         "sw:lower:hop"}));
}

TEST(Switch3, OneQubitGateMatchesFeynman) {
  std::mt19937_64 rng(2);
  const Circuit c = make_circuit(1, "0", {Gate::single_qubit(0, testing::random_unitary(rng))});
  const Compiled s3 = compile_switch3(c), f4 = compile_feynman4(c);
  ASSERT_EQ(s3.hamiltonian.size(), 1u);
  EXPECT_EQ(s3.hamiltonian.terms()[0].sites.size(), 3u);
  EXPECT_EQ(s3.hamiltonian.terms()[0].matrix, f4.hamiltonian.terms()[0].matrix);
}

TEST(Qutrit2, CnotGadgetInventory) {
  const Compiled c = compile_qutrit2(testing::one_cnot());
  const SiteRegister& reg = c.hamiltonian.site_register();
  EXPECT_EQ(count_role(reg, SiteRole::Station, 2), 2);
  EXPECT_EQ(count_role(reg, SiteRole::GadgetQutrit, 3), 6);
  EXPECT_EQ(count_role(reg, SiteRole::GadgetQubit, 2), 4);
  EXPECT_EQ(c.hamiltonian.size(), 18u);
  EXPECT_EQ(with_tag_prefix(c.hamiltonian, "H23u:").size(), 9u);
  EXPECT_EQ(with_tag_prefix(c.hamiltonian, "H23l:").size(), 9u);
  for (const Term& t : c.hamiltonian.terms()) {
    EXPECT_LE(t.sites.size(), 2u);
    int qutrits = 0;
    for (int s : t.sites) qutrits += reg.site(s).dim == 3;
    EXPECT_LE(qutrits, 1) << t.tag;  // one qubit and one qutrit at most
  }
}

TEST(Qutrit2, UpperTrackPositions) {
  const Compiled c = compile_qutrit2(testing::one_cnot());
  for (const char* stop : kTrackStops) EXPECT_NO_THROW(c.clock.index_of(track_label(1, 'u', stop)));
  // psi_0, 8 upper, 8 lower, psi_1
  EXPECT_EQ(c.clock.labels.size(), 18u);
  EXPECT_EQ(c.clock.labels.front().name, "t=0");
  EXPECT_EQ(c.clock.labels.back().name, "t=1");
}

TEST(Qutrit2, LowerMiddleHopDoesNotFlip) {
  const Compiled c = compile_qutrit2(testing::one_cnot());
  const auto lower = with_tag_prefix(c.hamiltonian, "H23l:t=1:hop(3A->3B)");
  ASSERT_EQ(lower.size(), 1u);
  EXPECT_EQ(lower[0]->sites.size(), 1u);  // no work qubit
  Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(3, 3);
  hop(1, 2) = hop(2, 1) = 1.0;
  EXPECT_EQ(lower[0]->matrix, hop);
  const auto upper = with_tag_prefix(c.hamiltonian, "H23u:t=1:X(3A->3B)");
  ASSERT_EQ(upper.size(), 1u);
  EXPECT_EQ(upper[0]->sites.front(), 1);  // target qubit q1
}

TEST(Qubit2, AllTermsTwoLocalOverQubits) {
  const Compiled c = compile_qubit2(testing::one_cnot());
  const SiteRegister& reg = c.hamiltonian.site_register();
  for (const Site& s : reg.sites()) EXPECT_EQ(s.dim, 2);
  for (const Term& t : c.hamiltonian.terms()) EXPECT_EQ(t.sites.size(), 2u) << t.tag;
  EXPECT_EQ(reg.size(), 2 + 2 + 16);
}

TEST(Qubit2, EntryPatternFourTermsOfInvSqrt2) {
  const Compiled c = compile_qubit2(testing::one_cnot());
  const auto entry = with_tag_prefix(c.hamiltonian, "H22u:t=1:in(c->1A)");
  ASSERT_EQ(entry.size(), 4u);
  for (const Term* t : entry) {
    EXPECT_EQ(t->sites.size(), 2u);
    EXPECT_EQ((t->matrix.array() != cplx(0.0)).count(), 1);
    EXPECT_NEAR(t->matrix.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(2.0), 1e-15);
  }
}

/// (Z1 - Z2)/2 (x) V acting on (u, u') (x) work.
TEST(Qubit2, HalfZDifferenceAnnihilatesEqualPairs) {
  const Compiled c = compile_qubit2(testing::one_cnot());
  TermList h(c.hamiltonian.site_register());
  for (const Term* t : with_tag_prefix(c.hamiltonian, "H22u:t=1:ctl(1A->1B)")) h.add(t->sites, t->matrix, t->tag);
  ASSERT_EQ(h.size(), 2u);
  const SparseOperator op(h);
  const int u = h.site_register().at("u1@g1"), up = h.site_register().at("u1'@g1");
  for (int work = 0; work < 4; ++work) {
    for (int pair : {0, 1}) {  // |00> and |11>
      Config cfg;
      if (work & 2) cfg.emplace_back(0, 1);
      if (work & 1) cfg.emplace_back(1, 1);
      if (pair) {
        cfg.emplace_back(u, 1);
        cfg.emplace_back(up, 1);
      }
      SparseState s;
      s.add(cfg, 1.0);
      EXPECT_EQ(op.apply(s).size(), 0u);
    }
  }
  // |+> with control 1 maps to |->.
  SparseState plus;
  plus.add({{0, 1}, {u, 1}}, 1.0 / std::sqrt(2.0));
  plus.add({{0, 1}, {up, 1}}, 1.0 / std::sqrt(2.0));
  const SparseState out = op.apply(plus);
  EXPECT_NEAR(std::abs(out.get({{0, 1}, {u, 1}}) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.get({{0, 1}, {up, 1}}) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Qubit2, PhaseGadgetUsesPulseMiddle) {
  const double theta = 0.9;
  const Compiled c = compile_qubit2(make_circuit(1, "0", {Gate::basis_phase(0, theta)}));
  const auto mid = with_tag_prefix(c.hamiltonian, "H22u:t=1:phase(3A->3B)");
  ASSERT_EQ(mid.size(), 1u);
  EXPECT_EQ(mid[0]->matrix(1, 2), std::polar(1.0, theta));
  EXPECT_EQ(mid[0]->matrix(2, 1), std::polar(1.0, -theta));
  const auto lower = with_tag_prefix(c.hamiltonian, "H22l:t=1:phase(3A->3B)");
  ASSERT_EQ(lower.size(), 1u);
  EXPECT_EQ(lower[0]->matrix(1, 2), cplx(1.0));
  EXPECT_NO_THROW(c.hamiltonian.site_register().at("u3A@g1"));
  EXPECT_NO_THROW(c.hamiltonian.site_register().at("u3B@g1"));
}

TEST(Compile, ClosedFormCountsOnSuite) {
  for (const Circuit& circ : testing::random_suite(31, 40)) {
    for (Backend b : testing::kAllBackends) {
      const Compiled c = compile(circ, b);
      const BackendCounts want = expected_counts(circ, b);
      EXPECT_EQ(c.hamiltonian.site_register().size(), want.sites) << backend_name(b);
      EXPECT_EQ(c.hamiltonian.size(), want.terms) << backend_name(b);
      EXPECT_TRUE(c.hamiltonian.is_hermitian_closed()) << backend_name(b);
    }
  }
}

TEST(Compile, CoefficientsAndNorms) {
  const double s = 1.0 / std::sqrt(2.0);
  for (const Circuit& circ : testing::random_suite(41, 20)) {
    std::set<double> thetas;
    for (const Gate& g : circ.gates) thetas.insert(g.theta);
    for (Backend b : {Backend::Q23, Backend::Q22}) {
      const Compiled comp = compile(circ, b);
      for (const Term& t : comp.hamiltonian.terms()) {
        EXPECT_LE(operator_norm(t.matrix), kMaxTermNorm + 1e-12);
        // Controlled terms carry basis-rotated projectors, so only check
        // uncontrolled clock terms for the fixed coefficient set.
        if (t.tag.find("ctl") != std::string::npos) continue;
        for (Eigen::Index k = 0; k < t.matrix.size(); ++k) {
          const cplx z = t.matrix(k);
          if (z == cplx(0.0)) continue;
          const double a = std::abs(z);
          const bool ok = std::abs(a - 1.0) < 1e-12 || std::abs(a - s) < 1e-12 || std::abs(a - 0.5) < 1e-12;
          EXPECT_TRUE(ok) << t.tag << " " << z;
        }
      }
    }
  }
}

TEST(Compile, ClockConfigurationsOrthonormalSingleTrain) {
  const Circuit circ = make_circuit(2, "10", {Gate::cnot(0, 1), Gate::basis_phase(1, 0.3)});
  for (Backend b : testing::kAllBackends) {
    const Compiled c = compile(circ, b);
    std::vector<SparseState> states;
    for (const ClockLabel& l : c.clock.labels) {
      SparseState s;
      for (const ClockComponent& comp : l.components) {
        EXPECT_EQ(comp.excited.size(), 1u) << l.name;
        s.add(comp.excited, comp.amp);
      }
      states.push_back(s);
    }
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = 0; j < states.size(); ++j)
        EXPECT_NEAR(std::abs(inner(states[i], states[j])), i == j ? 1.0 : 0.0, 1e-12);
    EXPECT_EQ(c.clock.useful_length, 2);
    EXPECT_TRUE(c.clock.success_stations.empty());
  }
}

TEST(Compile, RejectsInvalid) {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  const Circuit had = make_circuit(1, "0", {Gate::single_qubit(0, h / std::sqrt(2.0))});
  EXPECT_THROW(compile(had, Backend::Q22), CompileError);
  EXPECT_THROW(compile(had, Backend::Q23), CompileError);
  EXPECT_NO_THROW(compile(had, Backend::S3));
}

TEST(Compile, PaddingByWalkLength) {
  const Circuit c = make_circuit(2, "00", {Gate::cnot(0, 1), Gate::identity(0)});
  EXPECT_EQ(walk_edges(c, Backend::F4, 2), 2);
  EXPECT_EQ(walk_edges(c, Backend::S3, 2), 4);
  EXPECT_EQ(walk_edges(c, Backend::Q23, 2), 10);
  const Circuit p = pad_for_walk(c, Backend::Q22, 6);
  EXPECT_EQ(p.length(), 2 + 5 * 10);
  EXPECT_EQ(p.useful_length, 2);
  EXPECT_EQ(pad_for_walk(c, Backend::F4, 6), pad_with_identities(c, 6));
}

}  // namespace
}  // namespace hqc
