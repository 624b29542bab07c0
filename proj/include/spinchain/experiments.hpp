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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/config.hpp"
#include "spinchain/error_analytics.hpp"
#include "spinchain/exact_propagator.hpp"
#include "spinchain/pulse_protocol.hpp"
#include "spinchain/resonance_propagator.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {

/// Two-branch input alpha |10...0> + beta |00...0> (control qubit in superposition).
struct ControlSuperposition {
  Amplitude alpha{1.0, 0.0};
  Amplitude beta{0.0, 0.0};
};

/// Everything a CLI command needs. Built from a key=value file; a `preset` key
/// (fig1 .. fig4) seeds defaults that explicit keys override.
struct ExperimentConfig {
  ChainParams params;
  double Omega = 0.0906;
  double P_drop = 1e-6;
  double P0 = 1e-6;  // reporting threshold and regime floor
  std::optional<BasisState> initial_state;
  std::optional<ControlSuperposition> superposition;
  std::vector<std::size_t> L_grid;
  std::vector<double> Omega_grid;
  std::vector<double> deltas;
  double tvd_threshold = 1e-3;
  std::size_t exact_cap = kDefaultExactQubitCap;

  /// Initial sparse state for a run (defaults to |0...0>).
  SparseState initial() const {
    if (superposition) {
      BasisState control(params.L);
      control.set(params.L - 1, true);
      SparseState st(params.L);
      st.set_amplitude(control, superposition->alpha);
      st.set_amplitude(BasisState(params.L), superposition->beta);
      return st;
    }
    return SparseState::basis(initial_state.value_or(BasisState(params.L)));
  }

  bool starts_in_ground() const {
    return !superposition && (!initial_state || initial_state->is_zero());
  }

  static ExperimentConfig from_config(KeyValueConfig cfg) {
    apply_preset(cfg);
    ExperimentConfig ec;
    ec.params = ChainParams::from_config(cfg);
    ec.Omega = cfg.get_double("Omega", ec.Omega);
    if (!(ec.Omega > 0.0)) throw ConfigError("config: Omega must be positive");
    ec.P_drop = cfg.get_double("P_drop", ec.P_drop);
    if (!(ec.P_drop >= 0.0 && ec.P_drop < 1.0)) throw ConfigError("config: P_drop must lie in [0, 1)");
    ec.P0 = cfg.get_double("P0", ec.P0);
    if (!(ec.P0 > 0.0 && ec.P0 < 1.0)) throw ConfigError("config: P0 must lie in (0, 1)");
    ec.tvd_threshold = cfg.get_double("tvd_threshold", ec.tvd_threshold);
    const long long cap = cfg.get_int("exact_cap", static_cast<long long>(ec.exact_cap));
    if (cap < 1 || cap > 20) throw ConfigError("config: exact_cap must lie in [1, 20]");
    ec.exact_cap = static_cast<std::size_t>(cap);

    if (auto init = cfg.get_string("initial")) {
      if (*init == "ground") {
        ec.initial_state = BasisState(ec.params.L);
      } else if (*init == "control") {
        BasisState s(ec.params.L);
        s.set(ec.params.L - 1, true);
        ec.initial_state = s;
      } else {
        BasisState s = parse_state(*init);
        if (s.size() != ec.params.L) throw ConfigError("config: initial state length differs from L");
        ec.initial_state = s;
      }
    }
    if (cfg.contains("alpha") || cfg.contains("beta")) {
      ControlSuperposition sp;
      sp.alpha = cfg.get_double("alpha", 0.0);
      sp.beta = cfg.get_double("beta", 0.0);
      if (std::abs(std::norm(sp.alpha) + std::norm(sp.beta) - 1.0) > 1e-9) {
        throw ConfigError("config: alpha^2 + beta^2 must equal 1");
      }
      ec.superposition = sp;
    }

    for (double x : cfg.get_double_list("L_grid")) {
      if (x < 3 || x != std::floor(x)) throw ConfigError("config: L_grid entries must be integers >= 3");
      ec.L_grid.push_back(static_cast<std::size_t>(x));
    }
    if (ec.L_grid.empty() && cfg.contains("L_min")) {
      const long long lo = cfg.get_int("L_min", 4);
      const long long hi = cfg.get_int("L_max", 100);
      const long long step = cfg.get_int("L_step", 1);
      if (lo < 3 || hi < lo || step < 1) throw ConfigError("config: bad L_min/L_max/L_step");
      for (long long L = lo; L <= hi; L += step) ec.L_grid.push_back(static_cast<std::size_t>(L));
    }

    ec.Omega_grid = cfg.get_double_list("Omega_grid");
    if (!cfg.contains("Omega_grid") && cfg.contains("Omega_points")) {
      const double lo = cfg.get_double("Omega_min", 0.02);
      const double hi = cfg.get_double("Omega_max", 0.6);
      const long long n = cfg.get_int("Omega_points", 0);
      if (n < 0 || !(lo > 0.0) || hi < lo) throw ConfigError("config: bad Omega_min/Omega_max/Omega_points");
      for (long long i = 0; i < n; ++i) {
        ec.Omega_grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
      }
    }
    for (double o : ec.Omega_grid) {
      if (!(o > 0.0)) throw ConfigError("config: Omega_grid entries must be positive");
    }
    ec.deltas = cfg.get_double_list("deltas", {2.0 * ec.params.J, 4.0 * ec.params.J});
    return ec;
  }

  static ExperimentConfig load(const std::string& path) { return from_config(KeyValueConfig::load(path)); }

 private:
  static BasisState parse_state(const std::string& text) {
    try {
      return BasisState::parse(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  static void apply_preset(KeyValueConfig& cfg) {
    auto preset = cfg.get_string("preset");
    if (!preset) return;
    auto fill = [&](const std::string& key, const std::string& value) {
      if (!cfg.contains(key)) cfg.set(key, value);
    };
    fill("J", "1");
    fill("P0", "1e-6");
    fill("P_drop", "1e-6");
    if (*preset == "fig1") {
      fill("Omega_min", "0.02");
      fill("Omega_max", "0.6");
      fill("Omega_points", "5801");
    } else if (*preset == "fig2") {
      fill("Omega", "0.0906");
      fill("L_min", "4");
      fill("L_max", "100");
    } else if (*preset == "fig3") {
      fill("Omega", "0.20844");
      fill("L_min", "4");
      fill("L_max", "100");
    } else if (*preset == "fig4") {
      fill("Omega", "0.20844");
      fill("L", "70");
    } else {
      throw ConfigError("config: unknown preset '" + *preset + "'");
    }
  }
};

/// Runs `work(i)` for i in [0, n) on up to hardware_concurrency threads. Results must be written
/// to per-index slots so the output does not depend on scheduling.
template <typename Work>
void parallel_for(std::size_t n, Work&& work) {
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---- eps(Omega) sweep ------------------------------------------------------

struct OmegaSweepRow {
  double Omega = 0.0;
  std::vector<double> eps;  // one per detuning
  bool below_P0 = false;    // every eps < P0
};

inline std::vector<OmegaSweepRow> sweep_omega(const std::vector<double>& grid, const std::vector<double>& deltas,
                                              double P0) {
  std::vector<OmegaSweepRow> rows;
  rows.reserve(grid.size());
  for (double omega : grid) {
    OmegaSweepRow r;
    r.Omega = omega;
    r.below_P0 = true;
    for (double d : deltas) {
      r.eps.push_back(epsilon_pi(omega, d));
      r.below_P0 = r.below_P0 && r.eps.back() < P0;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_omega_sweep_csv(std::ostream& out, const std::vector<double>& deltas,
                                  const std::vector<OmegaSweepRow>& rows) {
  out << "Omega";
  for (double d : deltas) out << ",eps_D" << csv::num(d);
  out << ",below_P0\n";
  for (const auto& r : rows) {
    out << csv::num(r.Omega);
    for (double e : r.eps) out << ',' << csv::num(e);
    out << ',' << (r.below_P0 ? 1 : 0) << '\n';
  }
}

// ---- P1 versus chain length ------------------------------------------------

struct LengthSweepRow {
  std::size_t L = 0;
  ErrorBudget budget;
  Census census;
  double dropped = 0.0;
};

/// Resonance propagator from |0...0> at each L, paired with the analytic budget.
inline LengthSweepRow length_point(ChainParams params, std::size_t L, double Omega, double P_drop, double P0) {
  params.L = L;
  params.validate();
  const auto seq = cn_remote_protocol(params, Omega);
  auto [final_state, report] = run_protocol(SparseState::basis(BasisState(L)), seq, params, P_drop);
  LengthSweepRow row;
  row.L = L;
  row.budget = error_budget(L, Omega, params.J, P0);
  row.census = unwanted_census(final_state, L, P0);
  row.census.table.clear();
  row.dropped = report.dropped;
  return row;
}

inline std::vector<LengthSweepRow> sweep_length(const ChainParams& base, const std::vector<std::size_t>& L_grid,
                                                double Omega, double P_drop, double P0) {
  std::vector<LengthSweepRow> rows(L_grid.size());
  parallel_for(L_grid.size(), [&](std::size_t i) { rows[i] = length_point(base, L_grid[i], Omega, P_drop, P0); });
  return rows;
}

inline void write_length_sweep_csv(std::ostream& out, const std::vector<LengthSweepRow>& rows) {
  out << "L,P1_analytic,P1_numeric,P1cal_analytic,P1cal_numeric,N_unwanted,P1_exact_sum,P1cal_exact_sum,eps,"
         "eps_prime\n";
  for (const auto& r : rows) {
    csv::row(out, {csv::num(r.L), csv::num(r.budget.P1.approx), csv::num(r.census.P1_num),
                   csv::num(r.budget.P1cal.approx), csv::num(r.census.P1cal_num), csv::num(r.census.count),
                   csv::num(r.budget.P1.exact), csv::num(r.budget.P1cal.exact), csv::num(r.budget.eps),
                   csv::num(r.budget.eps_prime)});
  }
}

// ---- per-state spectrum ----------------------------------------------------

struct SpectrumResult {
  Census census;
  double eps = 0.0;
  std::size_t first_order = 0;   // probability above sqrt(eps^3), the geometric midpoint of eps and eps^2
  std::size_t second_order = 0;  // the rest
};

inline SpectrumResult spectrum(const ChainParams& params, double Omega, double P_drop, double P0) {
  const auto seq = cn_remote_protocol(params, Omega);
  auto [final_state, report] = run_protocol(SparseState::basis(BasisState(params.L)), seq, params, P_drop);
  SpectrumResult r;
  r.census = unwanted_census(final_state, params.L, P0);
  r.eps = epsilon_pi(Omega, 2.0 * params.J);
  const double split = std::pow(r.eps, 1.5);
  for (const auto& [s, p] : r.census.table) ++(p >= split ? r.first_order : r.second_order);
  return r;
}

inline void write_spectrum_csv(std::ostream& out, const SpectrumResult& r) {
  out << "rank,state,probability,probability_over_eps,order\n";
  const double split = std::pow(r.eps, 1.5);
  std::size_t rank = 0;
  for (const auto& [s, p] : r.census.table) {
    csv::row(out, {csv::num(++rank), s.to_string(), csv::num(p), csv::num(p / r.eps), p >= split ? "1" : "2"});
  }
}

// ---- oracle comparison -----------------------------------------------------

struct VerifyResult {
  double tvd = 0.0;
  double max_gap = 0.0;
  bool pass = false;
  std::vector<double> p_resonance;
  std::vector<double> p_exact;
};

/// Both engines on the CN protocol from the configured initial state; the resonance side is unpruned.
inline VerifyResult verify(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  detail::check_cap(p.L, cfg.exact_cap, "verify");
  const auto seq = cn_remote_protocol(p, cfg.Omega);
  const SparseState start = cfg.initial();
  auto [approx, report] = run_protocol(start, seq, p, 0.0);
  const DenseState exact = evolve_exact(DenseState::from_sparse(start), seq, p, cfg.exact_cap);
  VerifyResult r;
  r.p_exact = exact.probabilities();
  r.p_resonance.assign(r.p_exact.size(), 0.0);
  for (const auto& [s, c] : approx.amplitudes()) r.p_resonance[s.low_word()] = std::norm(c);
  for (std::size_t i = 0; i < r.p_exact.size(); ++i) {
    const double gap = std::abs(r.p_exact[i] - r.p_resonance[i]);
    r.tvd += 0.5 * gap;
    r.max_gap = std::max(r.max_gap, gap);
  }
  r.pass = r.tvd <= cfg.tvd_threshold;
  return r;
}

inline void write_verify_csv(std::ostream& out, std::size_t L, const VerifyResult& r) {
  out << "state,p_resonance,p_exact,abs_diff\n";
  for (std::size_t i = 0; i < r.p_exact.size(); ++i) {
    csv::row(out, {BasisState::from_bits(L, i).to_string(), csv::num(r.p_resonance[i]), csv::num(r.p_exact[i]),
                   csv::num(std::abs(r.p_exact[i] - r.p_resonance[i]))});
  }
}

}  // namespace spinchain
