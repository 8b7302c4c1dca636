// Copyright 2026 The gaussblto Authors
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

// gaussblto command-line front end.
//
//   gaussblto analyze STATE --eta E [--channel CH]
//   gaussblto certify RHO SIGMA --eta E [--tol T]
//   gaussblto reach STATE --eta E --samples N --anc-max K [--seed S] --out PATH
//                   [--grid x0,x1,y0,y1,res] [--format csv|json] [--threads T]
//   gaussblto decompose STATE
//   gaussblto gen-channel --m-in M --m-anc A --eta E [--m-out K] [--seed S] [--out PATH]
//
// Data goes to stdout or --out; diagnostics go to stderr as one JSON line.
// Exit codes: 0 success (certify: NotExcluded), 2 certify Forbidden, 1 error.

#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaussblto/gaussblto.hpp"

namespace gb = gaussblto;

namespace {

void diagnostic(const gb::Json &j) { std::cerr << j.dump() << '\n'; }

[[noreturn]] void usage_error(const std::string &msg) { gb::fail(gb::ErrorKind::Domain, msg); }

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  diagnostic(gb::Json{{"info", "no --seed given; drew a random seed"}, {"seed", drawn}});
  return drawn;
}

void require_eta(double eta) {
  if (!(eta >= 1.0)) gb::fail(gb::ErrorKind::UnphysicalTemperature, "--eta must be >= 1");
}

gb::GridSpec parse_grid(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 5) usage_error("--grid expects x0,x1,y0,y1,res");
  gb::GridSpec g;
  g.x0 = gb::parse_double(parts[0]);
  g.x1 = gb::parse_double(parts[1]);
  g.y0 = gb::parse_double(parts[2]);
  g.y1 = gb::parse_double(parts[3]);
  const double res = gb::parse_double(parts[4]);
  if (res != static_cast<int>(res)) usage_error("--grid resolution must be an integer");
  g.res = static_cast<int>(res);
  g.validate();
  return g;
}

void print(const gb::Json &j) { std::cout << j.dump(2) << '\n'; }

int cmd_analyze(const std::string &state_path, double eta, const std::string &channel_path) {
  require_eta(eta);
  gb::GaussianState s = gb::load_state(state_path);
  gb::require_valid(s);
  if (!channel_path.empty()) {
    const auto channel = gb::load_channel(channel_path);
    if (channel.eta() != eta) gb::fail(gb::ErrorKind::IncompatibleBath, "channel eta differs from --eta");
    s = gb::apply(channel, s);
  }
  print(gb::to_json(gb::profile(s, eta)));
  return 0;
}

int cmd_certify(const std::string &rho_path, const std::string &sigma_path, double eta, double tol) {
  require_eta(eta);
  if (!(tol >= 0.0)) usage_error("--tol must be >= 0");
  const auto verdict = gb::certify_transition(gb::load_state(rho_path), gb::load_state(sigma_path), eta, tol);
  print(gb::to_json(verdict));
  return verdict.verdict == gb::Verdict::Forbidden ? 2 : 0;
}

struct ReachArgs {
  std::string state;
  double eta = 0.0;
  std::size_t samples = 0;
  int anc_max = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string grid;
  std::string format = "csv";
  int threads = 0;
};

int cmd_reach(const ReachArgs &a) {
  require_eta(a.eta);
  const auto s = gb::load_state(a.state);
  gb::ReachConfig cfg;
  cfg.eta = a.eta;
  cfg.m_anc_max = a.anc_max;
  cfg.n_samples = a.samples;
  cfg.seed = resolve_seed(a.seed);
  cfg.threads = a.threads;
  const auto samples = gb::sample_reachable(s, cfg);
  std::optional<gb::RegionGrid> grid;
  if (!a.grid.empty()) {
    grid = gb::theorem_bound_region(s, a.eta, parse_grid(a.grid));
    gb::mark_samples(*grid, s, samples);
  }
  const auto format = a.format == "json" ? gb::RegionFormat::Json : gb::RegionFormat::Csv;
  gb::emit_region(samples, grid ? &*grid : nullptr, a.out, format);
  if (grid && grid->escapes > 0) {
    diagnostic(gb::Json{{"warning", "samples outside the outer-bound region"}, {"escapes", grid->escapes}});
  }
  return 0;
}

int cmd_decompose(const std::string &state_path) {
  const auto s = gb::load_state(state_path);
  gb::require_valid(s);
  const auto w = gb::williamson(s.cov());
  const auto bm = gb::bloch_messiah(w.S);
  print(gb::Json{{"nu", gb::to_json_vector(w.nu)}, {"williamson", gb::to_json(w)}, {"bloch_messiah", gb::to_json(bm)}});
  return 0;
}

int cmd_gen_channel(int m_in, int m_anc, double eta, std::optional<int> m_out, const std::optional<std::uint64_t> &seed,
                    const std::string &out) {
  require_eta(eta);
  if (m_in < 1 || m_anc < 0) usage_error("--m-in must be >= 1 and --m-anc >= 0");
  gb::Rng rng(resolve_seed(seed));
  const auto channel = gb::random_channel(m_in, m_anc, m_out.value_or(m_in), eta, rng);
  const std::string text = gb::to_json(channel).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    gb::write_text_file(out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gaussian states and bosonic linear thermal operations"};
  app.require_subcommand(1);

  std::string state_path, rho_path, sigma_path, channel_path, out_path;
  double eta = 0.0;
  double tol = gb::kCertifyTol;

  auto *analyze = app.add_subcommand("analyze", "Thermal profile of a state (optionally after a channel)");
  analyze->add_option("state", state_path, "State JSON file")->required();
  analyze->add_option("--eta", eta, "Bath thermal level (>= 1)")->required();
  analyze->add_option("--channel", channel_path, "Channel JSON applied before profiling");

  auto *certify = app.add_subcommand("certify", "Check whether the laws exclude rho -> sigma");
  certify->add_option("rho", rho_path, "Initial state JSON")->required();
  certify->add_option("sigma", sigma_path, "Final state JSON")->required();
  certify->add_option("--eta", eta, "Bath thermal level (>= 1)")->required();
  certify->add_option("--tol", tol, "Violation tolerance");

  ReachArgs reach_args;
  std::uint64_t reach_seed = 0;
  auto *reach = app.add_subcommand("reach", "Sample reachable single-mode states and outer bounds");
  reach->add_option("state", reach_args.state, "State JSON file")->required();
  reach->add_option("--eta", reach_args.eta, "Bath thermal level (>= 1)")->required();
  reach->add_option("--samples", reach_args.samples, "Number of sampled channels")->required();
  reach->add_option("--anc-max", reach_args.anc_max, "Maximum ancilla count (>= 1)")->required();
  auto *reach_seed_opt = reach->add_option("--seed", reach_seed, "Random seed");
  reach->add_option("--out", reach_args.out, "Output path")->required();
  reach->add_option("--grid", reach_args.grid, "Outer-bound grid x0,x1,y0,y1,res");
  reach->add_option("--format", reach_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  reach->add_option("--threads", reach_args.threads, "Worker threads (0 = all cores)");

  auto *decompose = app.add_subcommand("decompose", "Williamson and Bloch-Messiah decompositions");
  decompose->add_option("state", state_path, "State JSON file")->required();

  int m_in = 1, m_anc = 0, m_out = 0;
  std::uint64_t gen_seed = 0;
  auto *gen = app.add_subcommand("gen-channel", "Random BLTO channel with a Haar passive unitary");
  gen->add_option("--m-in", m_in, "Input modes")->required();
  gen->add_option("--m-anc", m_anc, "Ancilla modes")->required();
  gen->add_option("--eta", eta, "Bath thermal level (>= 1)")->required();
  auto *m_out_opt = gen->add_option("--m-out", m_out, "Kept modes (default m-in)");
  auto *gen_seed_opt = gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    diagnostic(gb::Json{{"error", "Usage"}, {"message", e.what()}});
    return 1;
  }

  try {
    if (*analyze) return cmd_analyze(state_path, eta, channel_path);
    if (*certify) return cmd_certify(rho_path, sigma_path, eta, tol);
    if (*reach) {
      if (*reach_seed_opt) reach_args.seed = reach_seed;
      return cmd_reach(reach_args);
    }
    if (*decompose) return cmd_decompose(state_path);
    if (*gen) {
      return cmd_gen_channel(m_in, m_anc, eta, *m_out_opt ? std::optional<int>(m_out) : std::nullopt,
                             *gen_seed_opt ? std::optional<std::uint64_t>(gen_seed) : std::nullopt, out_path);
    }
  } catch (const gb::Error &e) {
    diagnostic(gb::Json{{"error", std::string(gb::to_string(e.kind()))}, {"message", e.what()}});
    return 1;
  } catch (const std::exception &e) {
    diagnostic(gb::Json{{"error", "Internal"}, {"message", e.what()}});
    return 1;
  }
  return 1;
}
