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

#include <random>

#include "hqc/compiler.hpp"
#include "hqc/model.hpp"
#include "hqc/sparse_state.hpp"
#include "support.hpp"

namespace hqc {
namespace {

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

StateVector random_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector v(dim);
  for (auto& a : v) a = cplx(g(rng), g(rng));
  return v / v.norm();
}

/// Reference embedding: permute the register so the term sites lead, kron
/// with the identity, then permute back. Independent of embed_full.
Eigen::MatrixXcd dense_embed(const TermList& h) {
  const SiteRegister& reg = h.site_register();
  const Eigen::Index dim = reg.dense_dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const int S = reg.size();
  auto digits = [&](Eigen::Index i) {
    std::vector<int> d(static_cast<std::size_t>(S));
    for (int s = S - 1; s >= 0; --s) {
      d[static_cast<std::size_t>(s)] = static_cast<int>(i % reg.site(s).dim);
      i /= reg.site(s).dim;
    }
    return d;
  };
  for (const Term& t : h.terms()) {
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto dr = digits(r), dc = digits(c);
        bool rest_equal = true;
        for (int s = 0; s < S; ++s)
          if (std::find(t.sites.begin(), t.sites.end(), s) == t.sites.end() &&
              dr[static_cast<std::size_t>(s)] != dc[static_cast<std::size_t>(s)])
            rest_equal = false;
        if (!rest_equal) continue;
        Eigen::Index lr = 0, lc = 0;
        for (int s : t.sites) {
          lr = lr * reg.site(s).dim + dr[static_cast<std::size_t>(s)];
          lc = lc * reg.site(s).dim + dc[static_cast<std::size_t>(s)];
        }
        out(r, c) += t.matrix(lr, lc);
      }
  }
  return out;
}

TEST(Register, MixedRadix) {
  SiteRegister reg;
  reg.add(2, SiteRole::Work, "q0");
  reg.add(3, SiteRole::GadgetQutrit, "u1@g1");
  reg.add(2, SiteRole::Station, "c_0");
  EXPECT_EQ(reg.dense_dimension(), 12);
  EXPECT_EQ(reg.strides(), (std::vector<Eigen::Index>{6, 2, 1}));
  EXPECT_EQ(reg.at("c_0"), 2);
  EXPECT_FALSE(reg.find("nope"));
  EXPECT_THROW(reg.add(2, SiteRole::Work, "q0"), std::invalid_argument);
  EXPECT_THROW(reg.add(4, SiteRole::Work, "q9"), std::invalid_argument);
}

TEST(Register, DenseGuard) {
  SiteRegister reg;
  for (int i = 0; i < 23; ++i) reg.add(2, SiteRole::Station, "c_" + std::to_string(i));
  EXPECT_THROW(reg.dense_dimension(), ResourceGuardError);
}

TEST(TermList, Validation) {
  TermList h;
  for (int i = 0; i < 5; ++i) h.site_register().add(2, SiteRole::Work, "q" + std::to_string(i));
  EXPECT_THROW(h.add({0, 0}, Eigen::MatrixXcd::Identity(4, 4), "dup"), std::invalid_argument);
  EXPECT_THROW(h.add({0, 1, 2, 3, 4}, Eigen::MatrixXcd::Zero(32, 32), "arity"), std::invalid_argument);
  EXPECT_THROW(h.add({0}, Eigen::MatrixXcd::Identity(4, 4), "shape"), std::invalid_argument);
  EXPECT_THROW(h.add({0}, 3.0 * Eigen::MatrixXcd::Identity(2, 2), "norm"), std::invalid_argument);
  EXPECT_THROW(h.add({7}, pauli_x(), "range"), std::invalid_argument);
  h.add({0}, 2.0 * pauli_x(), "ok");
  EXPECT_EQ(h.size(), 1u);
}

TEST(Apply, EmptyAndPauli) {
  TermList h;
  h.site_register().add(2, SiteRole::Work, "q0");
  StateVector zero(2);
  zero << 1.0, 0.0;
  EXPECT_EQ(apply_term_list(h, zero), StateVector::Zero(2));
  EXPECT_EQ(embed_full(h).nonZeros(), 0);
  h.add({0}, pauli_x(), "X");
  const StateVector one = apply_term_list(h, zero);
  EXPECT_EQ(one(0), cplx(0.0));
  EXPECT_EQ(one(1), cplx(1.0));
  EXPECT_THROW(apply_term_list(h, StateVector::Zero(4)), std::invalid_argument);
}

TEST(Embed, IdentityOnUntouchedSite) {
  TermList h;
  for (int i = 0; i < 3; ++i) h.site_register().add(2, SiteRole::Work, "q" + std::to_string(i));
  Eigen::MatrixXcd zz = Eigen::MatrixXcd::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  h.add({0, 2}, zz, "ZZ");
  const Eigen::MatrixXcd full = Eigen::MatrixXcd(embed_full(h));
  for (Eigen::Index i = 0; i < 8; ++i) {
    const int s0 = (i >> 2) & 1, s2 = i & 1;
    EXPECT_EQ(full(i, i), cplx(s0 == s2 ? 1.0 : -1.0));
  }
  EXPECT_EQ(full.cwiseAbs().sum(), 8.0);
}

TEST(Embed, CompiledHamiltoniansAreHermitianAndMatchApply) {
  const Circuit c = testing::one_cnot("10");
  for (Backend b : testing::kAllBackends) {
    const Compiled comp = compile(c, b);
    if (comp.hamiltonian.site_register().qubit_equivalents() > 10) continue;  // dense oracle below is O(dim^2)
    const Eigen::MatrixXcd full = Eigen::MatrixXcd(embed_full(comp.hamiltonian));
    EXPECT_LE((full - full.adjoint()).cwiseAbs().maxCoeff(), 1e-12) << backend_name(b);
    EXPECT_LE((full - dense_embed(comp.hamiltonian)).cwiseAbs().maxCoeff(), 1e-12) << backend_name(b);
    const StateVector psi = random_state(full.rows(), 17);
    EXPECT_LE((apply_term_list(comp.hamiltonian, psi) - full * psi).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Embed, LargeBackendsHermitianViaSparse) {
  const Circuit c = testing::one_cnot("10");
  for (Backend b : testing::kAllBackends) {
    const Compiled comp = compile(c, b);
    EXPECT_TRUE(comp.hamiltonian.is_hermitian_closed()) << backend_name(b);
    if (comp.hamiltonian.site_register().qubit_equivalents() > 18) continue;
    const SparseMatrix full = embed_full(comp.hamiltonian);
    const SparseMatrix adj = SparseMatrix(full.adjoint());
    EXPECT_LE(SparseMatrix(full - adj).cwiseAbs().sum(), 1e-12) << backend_name(b);
  }
}

TEST(Apply, FeynmanIdentityMovesTrain) {
  const Circuit c = testing::identities(1, 3);
  const Compiled comp = compile(c, Backend::F4);
  const SiteRegister& reg = comp.hamiltonian.site_register();
  const Eigen::MatrixXcd full = dense_embed(comp.hamiltonian);
  const auto strides = reg.strides();
  StateVector psi0 = StateVector::Zero(reg.dense_dimension());
  psi0(strides[static_cast<std::size_t>(reg.at("c_0"))]) = 1.0;
  const StateVector out = apply_term_list(comp.hamiltonian, psi0);
  EXPECT_LE((out - full * psi0).cwiseAbs().maxCoeff(), 1e-15);
  StateVector psi1 = StateVector::Zero(reg.dense_dimension());
  psi1(strides[static_cast<std::size_t>(reg.at("c_1"))]) = 1.0;
  EXPECT_EQ(out, psi1);
}

TEST(SparseState, DenseRoundTripAndOperator) {
  const Circuit c = make_circuit(2, "01", {Gate::cnot(1, 0), Gate::basis_phase(0, 0.4)});
  for (Backend b : {Backend::F4, Backend::S3}) {
    const Compiled comp = compile(c, b);
    const SiteRegister& reg = comp.hamiltonian.site_register();
    const StateVector psi = random_state(reg.dense_dimension(), 23);
    const SparseState s = SparseState::from_dense(psi, reg);
    EXPECT_EQ(s.to_dense(reg), psi);
    const SparseOperator op(comp.hamiltonian);
    const StateVector hs = op.apply(s).to_dense(reg);
    EXPECT_LE((hs - apply_term_list(comp.hamiltonian, psi)).cwiseAbs().maxCoeff(), 1e-12) << backend_name(b);
  }
}

TEST(Audit, LocalityLadder) {
  const Circuit c = testing::one_cnot();
  const int expect[] = {4, 3, 2, 2};
  for (std::size_t i = 0; i < 4; ++i) {
    const AuditReport a = audit(compile(c, testing::kAllBackends[i]).hamiltonian);
    EXPECT_EQ(a.max_arity, expect[i]) << backend_name(testing::kAllBackends[i]);
    EXPECT_LE(a.max_term_norm, kMaxTermNorm + 1e-12);
    int max_deg = 0;
    for (const auto& [s, d] : a.per_site_degree) max_deg = std::max(max_deg, d);
    EXPECT_EQ(a.max_degree, max_deg);
  }
}

TEST(Audit, DegreesCountDistinctTerms) {
  TermList h;
  for (int i = 0; i < 3; ++i) h.site_register().add(2, SiteRole::Work, "q" + std::to_string(i));
  Eigen::MatrixXcd xx = Eigen::MatrixXcd::Zero(4, 4);
  xx(0, 3) = xx(3, 0) = xx(1, 2) = xx(2, 1) = 1.0;
  h.add({0, 1}, xx, "a");
  h.add({1, 2}, xx, "b");
  const AuditReport a = audit(h);
  EXPECT_EQ(a.per_site_degree.at(0), 1);
  EXPECT_EQ(a.per_site_degree.at(1), 2);
  EXPECT_EQ(a.per_site_degree.at(2), 1);
  EXPECT_EQ(a.term_count, 2u);
  EXPECT_EQ(a.max_arity, 2);
  EXPECT_NEAR(a.max_term_norm, 1.0, 1e-12);
}

}  // namespace
}  // namespace hqc
