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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hqc/circuit.hpp"

namespace hqc {

enum class SiteRole { Work, Station, GadgetQubit, GadgetQutrit };

std::string_view site_role_name(SiteRole r);
SiteRole parse_site_role(std::string_view s);

struct Site {
  int id = 0;
  int dim = 2;
  SiteRole role = SiteRole::Work;
  std::string label;
};

/// Raised when a dense full-space object would exceed the memory guard.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense full-space objects are limited to this many qubit equivalents.
inline constexpr double kDenseGuardQubits = 22.0;

/// Ordered list of qubit and qutrit sites. Basis states use mixed radix with
/// site 0 most significant.
class SiteRegister {
 public:
  int add(int dim, SiteRole role, std::string label);

  int size() const { return static_cast<int>(sites_.size()); }
  const Site& site(int id) const { return sites_.at(static_cast<std::size_t>(id)); }
  const std::vector<Site>& sites() const { return sites_; }
  std::optional<int> find(const std::string& label) const;
  int at(const std::string& label) const;

  double qubit_equivalents() const;
  /// Full-space dimension; throws ResourceGuardError above kDenseGuardQubits.
  Eigen::Index dense_dimension() const;
  /// Stride of each site in the dense mixed-radix index.
  std::vector<Eigen::Index> strides() const;

  bool operator==(const SiteRegister& o) const;

 private:
  std::vector<Site> sites_;
  std::unordered_map<std::string, int> by_label_;
};

struct Term {
  std::vector<int> sites;
  Eigen::MatrixXcd matrix;
  std::string tag;
};

inline constexpr double kMaxTermNorm = 2.0;

/// Hamiltonian as a sum of small dense terms over a site register.
class TermList {
 public:
  TermList() = default;
  explicit TermList(SiteRegister reg) : register_(std::move(reg)) {}

  /// Validates arity, site distinctness, matrix shape and the norm bound.
  void add(std::vector<int> sites, Eigen::MatrixXcd matrix, std::string tag);

  const SiteRegister& site_register() const { return register_; }
  SiteRegister& site_register() { return register_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Every non-Hermitian term has a partner on the same sites carrying its adjoint.
  bool is_hermitian_closed(double tol = 1e-12) const;

 private:
  SiteRegister register_;
  std::vector<Term> terms_;
};

using StateVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// H psi, summed term by term in ascending term order.
StateVector apply_term_list(const TermList& h, const StateVector& psi);

SparseMatrix embed_full(const TermList& h);

double operator_norm(const Eigen::MatrixXcd& m);

struct AuditReport {
  int max_arity = 0;
  std::size_t term_count = 0;
  int site_count = 0;
  std::map<int, int> per_site_degree;
  int max_degree = 0;
  double max_term_norm = 0.0;
};

AuditReport audit(const TermList& h);

}  // namespace hqc
