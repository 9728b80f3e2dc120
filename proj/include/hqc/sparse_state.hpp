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
#include <utility>
#include <vector>

#include "hqc/model.hpp"

namespace hqc {

/// A full-register basis configuration listing only the sites whose local
/// value is nonzero, sorted by site id. Registers with hundreds of sites stay
/// cheap because physical states here have few excitations.
using Config = std::vector<std::pair<std::int32_t, std::uint8_t>>;

int config_value(const Config& c, int site);
void config_set(Config& c, int site, int value);

/// Amplitudes over the full tensor-product space, stored for nonzero entries
/// only. Ordered map iteration keeps every reduction deterministic.
class SparseState {
 public:
  using Map = std::map<Config, cplx>;

  SparseState() = default;

  void add(const Config& c, cplx a) { amps_[c] += a; }
  cplx get(const Config& c) const;
  const Map& entries() const { return amps_; }
  std::size_t size() const { return amps_.size(); }

  double norm() const;
  void scale(cplx s);
  /// this += s * x
  void axpy(cplx s, const SparseState& x);
  /// Drops entries with |a| <= threshold (threshold 0 drops exact zeros only).
  void prune(double threshold = 0.0);

  static SparseState from_dense(const StateVector& v, const SiteRegister& reg);
  StateVector to_dense(const SiteRegister& reg) const;

 private:
  Map amps_;
};

cplx inner(const SparseState& a, const SparseState& b);  // <a|b>

/// Term list prepared for application to sparse states. Only terms touching an
/// excited site of a configuration, or acting nontrivially on all-zero local
/// states, are visited; the visit order is ascending term index.
class SparseOperator {
 public:
  explicit SparseOperator(const TermList& h);

  SparseState apply(const SparseState& psi) const;
  const TermList& terms() const { return *h_; }

 private:
  struct Kernel {
    std::vector<int> sites;
    std::vector<int> dims;
    // columns[c] lists (row, value) pairs with nonzero entries.
    std::vector<std::vector<std::pair<int, cplx>>> columns;
  };
  const TermList* h_;
  std::vector<Kernel> kernels_;
  std::vector<int> vacuum_active_;            // terms with nonzero column 0
  std::vector<std::vector<int>> site_terms_;  // site -> terms touching it
};

}  // namespace hqc
