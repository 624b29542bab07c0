// Copyright 2026 The spinchain Authors
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

// spinchain <protocol|run|sweep-omega|sweep-length|spectrum|verify> --config <file> [--out <dir>]
//
// Data files carry no timestamps; wall time goes to stderr. Without --out the primary table is
// written to stdout. Exit codes: 0 ok, 1 bad input, 2 verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

#include "spinchain/spinchain.hpp"

namespace {

using namespace spinchain;

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kVerifyFailed = 2;

class Output {
 public:
  explicit Output(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  /// Writes `name` under the output directory; with no directory only the primary table goes to stdout.
  void emit(const std::string& name, bool primary, const std::function<void(std::ostream&)>& writer) const {
    if (dir_.empty()) {
      if (primary) writer(std::cout);
      return;
    }
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
  }

 private:
  std::string dir_;
};

int cmd_protocol(const ExperimentConfig& cfg, const Output& out) {
  const auto seq = cn_remote_protocol(cfg.params, cfg.Omega);
  out.emit("protocol.csv", true, [&](std::ostream& os) { write_protocol_csv(os, seq); });
  return kOk;
}

int cmd_run(const ExperimentConfig& cfg, const Output& out) {
  const auto seq = cn_remote_protocol(cfg.params, cfg.Omega);
  auto [final_state, report] = run_protocol(cfg.initial(), seq, cfg.params, cfg.P_drop);
  out.emit("final_state.csv", true, [&](std::ostream& os) { write_state_csv(os, final_state); });
  out.emit("report.csv", false, [&](std::ostream& os) { write_report_csv(os, report); });
  if (cfg.starts_in_ground()) {
    const auto census = unwanted_census(final_state, cfg.params.L, cfg.P0);
    const auto budget = error_budget(cfg.params.L, cfg.Omega, cfg.params.J, cfg.P0);
    out.emit("census.csv", false, [&](std::ostream& os) {
      os << "count,P1_numeric,P1cal_numeric,dropped\n";
      csv::row(os, {csv::num(census.count), csv::num(census.P1_num), csv::num(census.P1cal_num),
                    csv::num(final_state.dropped())});
    });
    out.emit("budget.csv", false, [&](std::ostream& os) {
      write_budget_header(os);
      write_budget_row(os, budget);
    });
  }
  std::cerr << "run: " << report.active_states.size() << " pulses, " << final_state.active_count()
            << " active states, " << report.wall_seconds << " s\n";
  return kOk;
}

int cmd_sweep_omega(const ExperimentConfig& cfg, const Output& out) {
  const auto rows = sweep_omega(cfg.Omega_grid, cfg.deltas, cfg.P0);
  out.emit("sweep_omega.csv", true, [&](std::ostream& os) { write_omega_sweep_csv(os, cfg.deltas, rows); });
  return kOk;
}

int cmd_sweep_length(const ExperimentConfig& cfg, const Output& out) {
  auto grid = cfg.L_grid;
  if (grid.empty()) {
    for (std::size_t L = 4; L <= 100; ++L) grid.push_back(L);
  }
  const auto rows = sweep_length(cfg.params, grid, cfg.Omega, cfg.P_drop, cfg.P0);
  out.emit("sweep_length.csv", true, [&](std::ostream& os) { write_length_sweep_csv(os, rows); });
  out.emit("budget.csv", false, [&](std::ostream& os) {
    write_budget_header(os);
    for (const auto& r : rows) write_budget_row(os, r.budget);
  });
  return kOk;
}

int cmd_spectrum(const ExperimentConfig& cfg, const Output& out) {
  const auto result = spectrum(cfg.params, cfg.Omega, cfg.P_drop, cfg.P0);
  out.emit("spectrum.csv", true, [&](std::ostream& os) { write_spectrum_csv(os, result); });
  std::cerr << "spectrum: " << result.first_order << " first-order and " << result.second_order
            << " second-order states above P0\n";
  return kOk;
}

int cmd_verify(const ExperimentConfig& cfg, const Output& out) {
  const auto result = verify(cfg);
  out.emit("verify.csv", true, [&](std::ostream& os) { write_verify_csv(os, cfg.params.L, result); });
  std::cerr << "verify: TVD " << csv::num(result.tvd) << ", max gap " << csv::num(result.max_gap) << ", threshold "
            << csv::num(cfg.tvd_threshold) << " -> " << (result.pass ? "pass" : "FAIL") << '\n';
  return result.pass ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Remote-CN pulse protocol simulator for an Ising nuclear-spin chain"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const ExperimentConfig&, const Output&);
  };
  const Command commands[] = {
      {"protocol", "Export the remote-CN pulse sequence", cmd_protocol},
      {"run", "Propagate the configured initial state through the protocol", cmd_run},
      {"sweep-omega", "Tabulate eps and eps' over a Rabi-frequency grid", cmd_sweep_omega},
      {"sweep-length", "Unwanted-state probabilities versus chain length", cmd_sweep_length},
      {"spectrum", "Per-state probabilities of all unwanted states", cmd_spectrum},
      {"verify", "Compare the resonance propagator against the exact propagator", cmd_verify},
  };
  int (*selected)(const ExperimentConfig&, const Output&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "key=value configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default: primary table to stdout)");
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    const auto cfg = ExperimentConfig::load(config_path);
    const Output out(out_dir);
    return selected(cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "spinchain: " << e.what() << '\n';
    return kBadInput;
  }
}
