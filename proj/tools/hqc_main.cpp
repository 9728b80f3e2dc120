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

// hqc: compile circuits into local Hamiltonians, verify the computational
// subspace, and simulate the measurement protocol.
//
// Exit codes: 0 ok, 1 other error, 2 invalid input, 3 verification failed,
// 4 resource guard.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hqc/circuit.hpp"
#include "hqc/compiler.hpp"
#include "hqc/dynamics.hpp"
#include "hqc/serialize.hpp"
#include "hqc/subspace.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kInvalid = 2, kVerifyFailed = 3, kGuard = 4 };

struct RunConfig {
  std::string backend = "q22";
  std::string circuit;
  std::string terms;
  int padding = 1;
  std::string time = "auto";
  double dt = 0.0;
  int samples = 64;
  std::uint64_t seed = 1;
  std::string out;
  std::string csv;
  bool fullspace = false;
  std::vector<int> lengths{16, 32, 64, 128};
  int trials = 40;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

/// Writes to --out if given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out, text);
}

/// Summary lines go to stderr when stdout carries the artifact.
std::ostream& summary(const RunConfig& cfg) { return cfg.out.empty() ? std::cerr : std::cout; }

hqc::Circuit load_circuit(const RunConfig& cfg) {
  if (cfg.circuit.empty()) throw std::invalid_argument("--circuit is required");
  return hqc::parse_circuit(read_file(cfg.circuit));
}

hqc::Compiled compile_padded(const RunConfig& cfg, hqc::Circuit& c) {
  const hqc::Backend b = hqc::parse_backend(cfg.backend);
  c = hqc::pad_for_walk(c, b, cfg.padding);
  return hqc::compile(c, b);
}

int cmd_compile(const RunConfig& cfg) {
  hqc::Circuit c = load_circuit(cfg);
  const hqc::Compiled compiled = compile_padded(cfg, c);
  const hqc::AuditReport a = hqc::audit(compiled.hamiltonian);
  emit(cfg, hqc::dump_compiled(compiled));
  summary(cfg) << "backend=" << hqc::backend_name(compiled.backend) << " sites=" << a.site_count
               << " terms=" << a.term_count << " max_arity=" << a.max_arity << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  hqc::Circuit c = load_circuit(cfg);
  hqc::Compiled compiled = compile_padded(cfg, c);
  if (!cfg.terms.empty()) compiled = hqc::parse_compiled(read_file(cfg.terms));
  const hqc::VerifyReport rep = hqc::verify(c, compiled);
  if (!cfg.out.empty()) write_file(cfg.out, hqc::dump(hqc::to_json(rep)));
  std::printf("residual=%.3e basis_size=%zu restriction_match=%s max_entry_error=%.3e\n", rep.residual,
              rep.basis_size, rep.restriction_match ? "true" : "false", rep.max_entry_error);
  return rep.ok() ? kOk : kVerifyFailed;
}

int cmd_simulate(const RunConfig& cfg) {
  const hqc::Circuit c = load_circuit(cfg);
  hqc::ProtocolOptions opt;
  opt.padding = cfg.padding;
  if (cfg.time != "auto") {
    try {
      opt.time = std::stod(cfg.time);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("--time must be a number or 'auto'");
    }
  }
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.full_space = cfg.fullspace;
  opt.dt = cfg.dt;
  const hqc::EvolutionReport rep = hqc::run_protocol(c, hqc::parse_backend(cfg.backend), opt);
  emit(cfg, hqc::dump(hqc::to_json(rep)));
  if (!cfg.csv.empty()) write_file(cfg.csv, hqc::evolution_csv(rep));
  char line[256];
  std::snprintf(line, sizeof line,
                "basis_size=%zu T=%.6g samples=%zu mean_p_success=%.6f time_avg_p_success=%.6f min_fidelity=%.12f\n",
                rep.basis_size, rep.T, rep.times.size(), rep.mean_p_success, rep.time_avg_p_success,
                rep.min_fidelity);
  summary(cfg) << line;
  return kOk;
}

int cmd_mixing(const RunConfig& cfg) {
  const hqc::MixingEstimate est = hqc::estimate_mixing_scaling(cfg.lengths, cfg.trials);
  emit(cfg, hqc::dump(hqc::to_json(est)));
  for (std::size_t i = 0; i < est.lengths.size(); ++i)
    std::fprintf(stderr, "N=%d eps=%.4g T_mix(path)=%.6g%s T_mix(comb)=%.6g%s\n", est.lengths[i], est.eps[i],
                 est.path.t_mix[i], est.path.converged[i] ? "" : " (budget)", est.comb.t_mix[i],
                 est.comb.converged[i] ? "" : " (budget)");
  std::fprintf(stderr, "path fit: log T = %.4f + %.4f log N, stderr %.4f\n", est.path.intercept, est.path.exponent,
               est.path.exponent_stderr);
  std::fprintf(stderr, "comb fit: log T = %.4f + %.4f log N, stderr %.4f\n", est.comb.intercept, est.comb.exponent,
               est.comb.exponent_stderr);
  char line[128];
  std::snprintf(line, sizeof line, "exponent=%.4f comb_exponent=%.4f\n", est.path.exponent, est.comb.exponent);
  summary(cfg) << line;
  return kOk;
}

int cmd_audit(const RunConfig& cfg) {
  hqc::Circuit c = load_circuit(cfg);
  const hqc::Compiled compiled = compile_padded(cfg, c);
  const hqc::AuditReport a = hqc::audit(compiled.hamiltonian);
  emit(cfg, hqc::dump(hqc::to_json(a)));
  char line[160];
  std::snprintf(line, sizeof line, "sites=%d terms=%zu max_arity=%d max_degree=%d max_term_norm=%.6f\n",
                a.site_count, a.term_count, a.max_arity, a.max_degree, a.max_term_norm);
  summary(cfg) << line;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit-to-Hamiltonian compiler and walk simulator"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_circuit_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "f4, s3, q23 or q22")
        ->check(CLI::IsMember({"f4", "s3", "q23", "q22"}));
    sub->add_option("--circuit", cfg.circuit, "circuit file")->required();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  auto* compile = app.add_subcommand("compile", "write the term list and clock map as JSON");
  add_circuit_flags(compile);
  compile->add_option("--padding", cfg.padding, "walk-length padding factor")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check subspace invariance and the restricted walk graph");
  add_circuit_flags(verify);
  verify->add_option("--padding", cfg.padding, "walk-length padding factor")->check(CLI::PositiveNumber);
  verify->add_option("--terms", cfg.terms, "compiled JSON to verify instead of compiling");

  auto* simulate = app.add_subcommand("simulate", "run the measurement protocol");
  add_circuit_flags(simulate);
  int sim_padding = 6;
  simulate->add_option("--padding", sim_padding, "walk-length padding factor")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--time", cfg.time, "total time T or 'auto' (4 N^2)")->capture_default_str();
  simulate->add_option("--dt", cfg.dt, "full-space step (default 0.1/||H||)");
  simulate->add_option("--samples", cfg.samples, "measurement times")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  simulate->add_option("--csv", cfg.csv, "p_success(t) CSV path");
  simulate->add_flag("--fullspace", cfg.fullspace, "evolve in the full register instead of the subspace");

  auto* mixing = app.add_subcommand("mixing", "estimate the mixing-time exponent");
  mixing->add_option("--lengths", cfg.lengths, "walk sizes N")->capture_default_str()->delimiter(',');
  mixing->add_option("--trials", cfg.trials, "bisection steps per length")->capture_default_str()->check(CLI::PositiveNumber);
  mixing->add_option("--out", cfg.out, "output path (default stdout)");

  auto* audit = app.add_subcommand("audit", "locality and degree summary");
  add_circuit_flags(audit);
  audit->add_option("--padding", cfg.padding, "walk-length padding factor")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (app.got_subcommand(simulate)) cfg.padding = sim_padding;

  try {
    if (app.got_subcommand(compile)) return cmd_compile(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
    if (app.got_subcommand(mixing)) return cmd_mixing(cfg);
    if (app.got_subcommand(audit)) return cmd_audit(cfg);
  } catch (const hqc::ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const hqc::CompileError& e) {
    std::cerr << "error: circuit rejected\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kInvalid;
  } catch (const hqc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
