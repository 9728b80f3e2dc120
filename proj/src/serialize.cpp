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

#include "hqc/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace hqc {

namespace {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex number must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json config_json(const Config& c) {
  Json out = Json::array();
  for (const auto& [site, val] : c) out.push_back(Json::array({site, val}));
  return out;
}

Config config_from(const Json& j) {
  Config c;
  for (const auto& e : j) {
    const int site = e.at(0).get<int>();
    const int val = e.at(1).get<int>();
    if (val < 1 || val > 2) throw std::invalid_argument("clock configuration value out of range");
    if (!c.empty() && c.back().first >= site) throw std::invalid_argument("clock configuration must be sorted");
    c.emplace_back(site, static_cast<std::uint8_t>(val));
  }
  return c;
}

/// NaN becomes null.
Json number(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename F>
auto guarded(F f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(const TermList& h) {
  Json sites = Json::array();
  for (const Site& s : h.site_register().sites())
    sites.push_back({{"id", s.id}, {"dim", s.dim}, {"role", site_role_name(s.role)}, {"label", s.label}});
  Json terms = Json::array();
  for (const Term& t : h.terms()) {
    Json m = Json::array();
    for (Eigen::Index r = 0; r < t.matrix.rows(); ++r)
      for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) m.push_back(complex_json(t.matrix(r, c)));
    terms.push_back({{"sites", t.sites}, {"matrix", std::move(m)}, {"tag", t.tag}});
  }
  return {{"sites", std::move(sites)}, {"terms", std::move(terms)}};
}

TermList term_list_from_json(const Json& j) {
  return guarded([&] {
    SiteRegister reg;
    for (const auto& s : j.at("sites")) {
      const int id = reg.add(s.at("dim").get<int>(), parse_site_role(s.at("role").get<std::string>()),
                             s.at("label").get<std::string>());
      if (id != s.at("id").get<int>()) throw std::invalid_argument("site ids must be dense and ascending");
    }
    TermList h(std::move(reg));
    for (const auto& t : j.at("terms")) {
      auto sites = t.at("sites").get<std::vector<int>>();
      Eigen::Index dim = 1;
      for (int s : sites) {
        if (s < 0 || s >= h.site_register().size()) throw std::invalid_argument("term site out of range");
        dim *= h.site_register().site(s).dim;
      }
      const Json& m = t.at("matrix");
      if (static_cast<Eigen::Index>(m.size()) != dim * dim) throw std::invalid_argument("term matrix has wrong size");
      Eigen::MatrixXcd mat(dim, dim);
      for (Eigen::Index k = 0; k < dim * dim; ++k) mat(k / dim, k % dim) = complex_from(m.at(static_cast<std::size_t>(k)));
      h.add(std::move(sites), std::move(mat), t.at("tag").get<std::string>());
    }
    return h;
  });
}

Json to_json(const ClockMap& clock) {
  Json labels = Json::array();
  for (const ClockLabel& l : clock.labels) {
    Json comps = Json::array();
    for (const ClockComponent& c : l.components)
      comps.push_back({{"excited", config_json(c.excited)}, {"amp", complex_json(c.amp)}});
    labels.push_back({{"name", l.name}, {"components", std::move(comps)}});
  }
  return {{"labels", std::move(labels)},
          {"useful_length", clock.useful_length},
          {"stations", clock.station_sites},
          {"success", clock.success_stations}};
}

ClockMap clock_map_from_json(const Json& j) {
  return guarded([&] {
    ClockMap clock;
    for (const auto& l : j.at("labels")) {
      ClockLabel label{l.at("name").get<std::string>(), {}};
      for (const auto& c : l.at("components"))
        label.components.push_back(ClockComponent{config_from(c.at("excited")), complex_from(c.at("amp"))});
      clock.add(std::move(label));
    }
    clock.useful_length = j.at("useful_length").get<int>();
    clock.station_sites = j.at("stations").get<std::vector<int>>();
    clock.success_stations = j.at("success").get<std::vector<int>>();
    return clock;
  });
}

Json to_json(const Compiled& c) {
  Json j = to_json(c.hamiltonian);
  Json out = {{"backend", backend_name(c.backend)}};
  out["sites"] = std::move(j["sites"]);
  out["terms"] = std::move(j["terms"]);
  out["clock_map"] = to_json(c.clock);
  return out;
}

Compiled compiled_from_json(const Json& j) {
  return guarded([&] {
    Compiled c;
    c.backend = parse_backend(j.at("backend").get<std::string>());
    c.hamiltonian = term_list_from_json(j);
    c.clock = clock_map_from_json(j.at("clock_map"));
    const int sites = c.hamiltonian.site_register().size();
    for (const auto* v : {&c.clock.station_sites, &c.clock.success_stations})
      for (int s : *v)
        if (s < 0 || s >= sites) throw std::invalid_argument("clock map refers to a missing site");
    return c;
  });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string dump_compiled(const Compiled& c) { return dump(to_json(c)); }

Compiled parse_compiled(std::string_view text) {
  Json j = guarded([&] { return Json::parse(text); });
  return compiled_from_json(j);
}

Json to_json(const AuditReport& a) {
  Json degree = Json::object();
  for (const auto& [site, d] : a.per_site_degree) degree[std::to_string(site)] = d;
  return {{"max_arity", a.max_arity},       {"term_count", a.term_count},
          {"site_count", a.site_count},     {"max_degree", a.max_degree},
          {"max_term_norm", a.max_term_norm}, {"per_site_degree", std::move(degree)}};
}

Json to_json(const VerifyReport& v) {
  return {{"backend", backend_name(v.backend)},
          {"residual", v.residual},
          {"basis_size", v.basis_size},
          {"restriction_match", v.restriction_match},
          {"max_entry_error", number(v.max_entry_error)},
          {"ok", v.ok()}};
}

Json to_json(const EvolutionReport& r) {
  return {{"backend", backend_name(r.backend)},
          {"rng", "mt19937_64"},
          {"seed", r.seed},
          {"mode", r.full_space ? "full_space" : "restricted"},
          {"n", r.n},
          {"useful_length", r.useful_length},
          {"padded_length", r.padded_length},
          {"basis_size", r.basis_size},
          {"output_qubit", r.output_qubit},
          {"T", r.T},
          {"mean_p_success", r.mean_p_success},
          {"time_avg_p_success", r.time_avg_p_success},
          {"min_fidelity", number(r.min_fidelity)},
          {"times", numbers(r.times)},
          {"p_success", numbers(r.p_success)},
          {"p_output_one", numbers(r.p_output_one)},
          {"fidelity", numbers(r.fidelity)},
          {"clock_labels", r.clock_labels},
          {"time_avg_clock_dist", numbers(r.time_avg_clock_dist)}};
}

namespace {

Json fit_json(const MixingFit& f) {
  return {{"t_mix", numbers(f.t_mix)},
          {"converged", f.converged},
          {"monotone", f.monotone},
          {"exponent", number(f.exponent)},
          {"intercept", number(f.intercept)},
          {"exponent_stderr", number(f.exponent_stderr)}};
}

}  // namespace

Json to_json(const MixingEstimate& m) {
  return {{"lengths", m.lengths},
          {"eps", numbers(m.eps)},
          {"trials", m.trials},
          {"t_budget_factor", m.t_budget_factor},
          {"path", fit_json(m.path)},
          {"comb", fit_json(m.comb)}};
}

std::string evolution_csv(const EvolutionReport& r) {
  std::string out = "time,p_success,p_output_one,fidelity\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    out += csv_number(r.times[i]) + "," + csv_number(r.p_success[i]) + "," + csv_number(r.p_output_one[i]) + "," +
           csv_number(r.fidelity[i]) + "\n";
  return out;
}

}  // namespace hqc
