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

#include "hqc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hqc {

std::string_view site_role_name(SiteRole r) {
  switch (r) {
    case SiteRole::Work: return "work";
    case SiteRole::Station: return "station";
    case SiteRole::GadgetQubit: return "gadget-qubit";
    case SiteRole::GadgetQutrit: return "gadget-qutrit";
  }
  return "?";
}

SiteRole parse_site_role(std::string_view s) {
  if (s == "work") return SiteRole::Work;
  if (s == "station") return SiteRole::Station;
  if (s == "gadget-qubit") return SiteRole::GadgetQubit;
  if (s == "gadget-qutrit") return SiteRole::GadgetQutrit;
  throw std::invalid_argument("unknown site role '" + std::string(s) + "'");
}

int SiteRegister::add(int dim, SiteRole role, std::string label) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("site dimension must be 2 or 3");
  if (by_label_.count(label)) throw std::invalid_argument("duplicate site label '" + label + "'");
  const int id = size();
  by_label_.emplace(label, id);
  sites_.push_back(Site{id, dim, role, std::move(label)});
  return id;
}

std::optional<int> SiteRegister::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

int SiteRegister::at(const std::string& label) const {
  auto id = find(label);
  if (!id) throw std::out_of_range("no site labelled '" + label + "'");
  return *id;
}

double SiteRegister::qubit_equivalents() const {
  double q = 0.0;
  for (const Site& s : sites_) q += std::log2(static_cast<double>(s.dim));
  return q;
}

Eigen::Index SiteRegister::dense_dimension() const {
  if (qubit_equivalents() > kDenseGuardQubits + 1e-9)
    throw ResourceGuardError("register has " + std::to_string(qubit_equivalents()) +
                             " qubit equivalents; dense guard is " + std::to_string(kDenseGuardQubits));
  Eigen::Index d = 1;
  for (const Site& s : sites_) d *= s.dim;
  return d;
}

std::vector<Eigen::Index> SiteRegister::strides() const {
  std::vector<Eigen::Index> st(sites_.size());
  Eigen::Index acc = 1;
  for (std::size_t i = sites_.size(); i-- > 0;) {
    st[i] = acc;
    acc *= sites_[i].dim;
  }
  return st;
}

bool SiteRegister::operator==(const SiteRegister& o) const {
  if (sites_.size() != o.sites_.size()) return false;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const Site &a = sites_[i], &b = o.sites_[i];
    if (a.id != b.id || a.dim != b.dim || a.role != b.role || a.label != b.label) return false;
  }
  return true;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

void TermList::add(std::vector<int> sites, Eigen::MatrixXcd matrix, std::string tag) {
  if (sites.empty() || sites.size() > 4) throw std::invalid_argument(tag + ": term arity must be 1..4");
  std::set<int> seen;
  Eigen::Index dim = 1;
  for (int s : sites) {
    if (s < 0 || s >= register_.size()) throw std::invalid_argument(tag + ": site id out of range");
    if (!seen.insert(s).second) throw std::invalid_argument(tag + ": repeated site in term");
    dim *= register_.site(s).dim;
  }
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument(tag + ": matrix shape does not match site dimensions");
  if (operator_norm(matrix) > kMaxTermNorm + 1e-12)
    throw std::invalid_argument(tag + ": term norm exceeds bound");
  terms_.push_back(Term{std::move(sites), std::move(matrix), std::move(tag)});
}

bool TermList::is_hermitian_closed(double tol) const {
  std::vector<bool> used(terms_.size(), false);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& a = terms_[i];
    if ((a.matrix - a.matrix.adjoint()).cwiseAbs().maxCoeff() <= tol) continue;
    if (used[i]) continue;
    bool found = false;
    for (std::size_t j = 0; j < terms_.size() && !found; ++j) {
      if (j == i || used[j]) continue;
      const Term& b = terms_[j];
      if (b.sites == a.sites && (b.matrix - a.matrix.adjoint()).cwiseAbs().maxCoeff() <= tol) {
        used[i] = used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

/// Index arithmetic for one term embedded in the dense register.
struct DenseTermLayout {
  std::vector<Eigen::Index> site_stride;
  std::vector<int> site_dim;
  std::vector<Eigen::Index> offset;  // dense offset of each local basis state

  DenseTermLayout(const Term& t, const SiteRegister& reg, const std::vector<Eigen::Index>& strides) {
    for (int s : t.sites) {
      site_stride.push_back(strides[static_cast<std::size_t>(s)]);
      site_dim.push_back(reg.site(s).dim);
    }
    const Eigen::Index local = t.matrix.rows();
    offset.resize(static_cast<std::size_t>(local));
    for (Eigen::Index r = 0; r < local; ++r) {
      Eigen::Index rem = r, off = 0;
      for (std::size_t k = site_dim.size(); k-- > 0;) {
        off += (rem % site_dim[k]) * site_stride[k];
        rem /= site_dim[k];
      }
      offset[static_cast<std::size_t>(r)] = off;
    }
  }

  Eigen::Index local_index(Eigen::Index full) const {
    Eigen::Index idx = 0;
    for (std::size_t k = 0; k < site_dim.size(); ++k) idx = idx * site_dim[k] + (full / site_stride[k]) % site_dim[k];
    return idx;
  }
};

}  // namespace

StateVector apply_term_list(const TermList& h, const StateVector& psi) {
  const SiteRegister& reg = h.site_register();
  const Eigen::Index dim = reg.dense_dimension();
  if (psi.size() != dim) throw std::invalid_argument("state dimension does not match register");
  const auto strides = reg.strides();
  StateVector out = StateVector::Zero(dim);
  for (const Term& t : h.terms()) {
    DenseTermLayout lay(t, reg, strides);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const cplx a = psi(i);
      if (a == cplx(0.0)) continue;
      const Eigen::Index col = lay.local_index(i);
      const Eigen::Index base = i - lay.offset[static_cast<std::size_t>(col)];
      for (Eigen::Index r = 0; r < t.matrix.rows(); ++r) {
        const cplx m = t.matrix(r, col);
        if (m != cplx(0.0)) out(base + lay.offset[static_cast<std::size_t>(r)]) += m * a;
      }
    }
  }
  return out;
}

SparseMatrix embed_full(const TermList& h) {
  const SiteRegister& reg = h.site_register();
  const Eigen::Index dim = reg.dense_dimension();
  const auto strides = reg.strides();
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const Term& t : h.terms()) {
    DenseTermLayout lay(t, reg, strides);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Eigen::Index col = lay.local_index(i);
      const Eigen::Index base = i - lay.offset[static_cast<std::size_t>(col)];
      for (Eigen::Index r = 0; r < t.matrix.rows(); ++r) {
        const cplx m = t.matrix(r, col);
        if (m != cplx(0.0)) trips.emplace_back(base + lay.offset[static_cast<std::size_t>(r)], i, m);
      }
    }
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

AuditReport audit(const TermList& h) {
  AuditReport rep;
  rep.term_count = h.size();
  rep.site_count = h.site_register().size();
  for (int s = 0; s < rep.site_count; ++s) rep.per_site_degree[s] = 0;
  for (const Term& t : h.terms()) {
    rep.max_arity = std::max(rep.max_arity, static_cast<int>(t.sites.size()));
    rep.max_term_norm = std::max(rep.max_term_norm, operator_norm(t.matrix));
    for (int s : t.sites) ++rep.per_site_degree[s];
  }
  for (auto& [s, d] : rep.per_site_degree) rep.max_degree = std::max(rep.max_degree, d);
  return rep;
}

}  // namespace hqc
