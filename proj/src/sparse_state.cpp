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

#include "hqc/sparse_state.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

int config_value(const Config& c, int site) {
  auto it = std::lower_bound(c.begin(), c.end(), site,
                             [](const auto& e, int s) { return e.first < s; });
  if (it != c.end() && it->first == site) return it->second;
  return 0;
}

void config_set(Config& c, int site, int value) {
  auto it = std::lower_bound(c.begin(), c.end(), site,
                             [](const auto& e, int s) { return e.first < s; });
  const bool present = it != c.end() && it->first == site;
  if (value == 0) {
    if (present) c.erase(it);
  } else if (present) {
    it->second = static_cast<std::uint8_t>(value);
  } else {
    c.insert(it, {site, static_cast<std::uint8_t>(value)});
  }
}

cplx SparseState::get(const Config& c) const {
  auto it = amps_.find(c);
  return it == amps_.end() ? cplx(0.0) : it->second;
}

double SparseState::norm() const {
  double s = 0.0;
  for (const auto& [c, a] : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void SparseState::scale(cplx s) {
  for (auto& [c, a] : amps_) a *= s;
}

void SparseState::axpy(cplx s, const SparseState& x) {
  for (const auto& [c, a] : x.amps_) amps_[c] += s * a;
}

void SparseState::prune(double threshold) {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) <= threshold)
      it = amps_.erase(it);
    else
      ++it;
  }
}

SparseState SparseState::from_dense(const StateVector& v, const SiteRegister& reg) {
  const auto strides = reg.strides();
  SparseState out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == cplx(0.0)) continue;
    Config c;
    for (int s = 0; s < reg.size(); ++s) {
      const int val = static_cast<int>((i / strides[static_cast<std::size_t>(s)]) % reg.site(s).dim);
      if (val) c.emplace_back(s, static_cast<std::uint8_t>(val));
    }
    out.amps_.emplace(std::move(c), v(i));
  }
  return out;
}

StateVector SparseState::to_dense(const SiteRegister& reg) const {
  const Eigen::Index dim = reg.dense_dimension();
  const auto strides = reg.strides();
  StateVector v = StateVector::Zero(dim);
  for (const auto& [c, a] : amps_) {
    Eigen::Index idx = 0;
    for (const auto& [s, val] : c) idx += val * strides[static_cast<std::size_t>(s)];
    v(idx) += a;
  }
  return v;
}

cplx inner(const SparseState& a, const SparseState& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  cplx s = 0.0;
  for (const auto& [c, x] : small.entries()) {
    auto it = large.entries().find(c);
    if (it == large.entries().end()) continue;
    s += (&small == &a) ? std::conj(x) * it->second : std::conj(it->second) * x;
  }
  return s;
}

SparseOperator::SparseOperator(const TermList& h) : h_(&h) {
  const SiteRegister& reg = h.site_register();
  site_terms_.resize(static_cast<std::size_t>(reg.size()));
  kernels_.reserve(h.size());
  for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
    const Term& t = h.terms()[ti];
    Kernel k;
    k.sites = t.sites;
    for (int s : t.sites) {
      k.dims.push_back(reg.site(s).dim);
      site_terms_[static_cast<std::size_t>(s)].push_back(static_cast<int>(ti));
    }
    k.columns.resize(static_cast<std::size_t>(t.matrix.cols()));
    for (Eigen::Index c = 0; c < t.matrix.cols(); ++c)
      for (Eigen::Index r = 0; r < t.matrix.rows(); ++r)
        if (t.matrix(r, c) != cplx(0.0))
          k.columns[static_cast<std::size_t>(c)].emplace_back(static_cast<int>(r), t.matrix(r, c));
    if (!k.columns[0].empty()) vacuum_active_.push_back(static_cast<int>(ti));
    kernels_.push_back(std::move(k));
  }
}

SparseState SparseOperator::apply(const SparseState& psi) const {
  SparseState out;
  std::vector<int> candidates;
  for (const auto& [cfg, amp] : psi.entries()) {
    candidates = vacuum_active_;
    for (const auto& [s, v] : cfg) {
      const auto& ts = site_terms_[static_cast<std::size_t>(s)];
      candidates.insert(candidates.end(), ts.begin(), ts.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (int ti : candidates) {
      const Kernel& k = kernels_[static_cast<std::size_t>(ti)];
      int col = 0;
      for (std::size_t j = 0; j < k.sites.size(); ++j) col = col * k.dims[j] + config_value(cfg, k.sites[j]);
      for (const auto& [row, m] : k.columns[static_cast<std::size_t>(col)]) {
        Config next = cfg;
        int rem = row;
        for (std::size_t j = k.sites.size(); j-- > 0;) {
          config_set(next, k.sites[j], rem % k.dims[j]);
          rem /= k.dims[j];
        }
        out.add(next, m * amp);
      }
    }
  }
  out.prune(0.0);
  return out;
}

}  // namespace hqc
