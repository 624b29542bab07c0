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
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/csv.hpp"
#include "spinchain/pulse_protocol.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {

using Amplitude = std::complex<double>;

/// Two-level propagator for one pulse acting on a pair |m> (lower) <-> |p> (upper).
///
/// In the interaction picture the pair obeys
///   i dC_p/dt = -(Omega/2) e^{+i Delta t} C_m,   i dC_m/dt = -(Omega/2) e^{-i Delta t} C_p,
/// with Delta = E_p - E_m - nu. The exact solution over [t_start, t_start + tau] is
///   C_m' = (u + i v) e^{-i Delta tau/2} C_m + i w e^{-i Delta (t0 + t1)/2} C_p
///   C_p' = i w e^{+i Delta (t0 + t1)/2} C_m + (u - i v) e^{+i Delta tau/2} C_p
/// where u = cos(lambda tau/2), v = (Delta/lambda) sin(lambda tau/2), w = (Omega/lambda) sin(lambda tau/2).
struct PairUpdate {
  double u = 1.0;
  double v = 0.0;
  double w = 0.0;
  double Delta = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
  double t_start = 0.0;

  /// Matrix elements below this are rounding noise of an analytic zero (e.g. cos(pi/2)) and are set to 0.
  static constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();

  static PairUpdate make(double Delta, double Omega, double tau, double t_start) {
    PairUpdate pu;
    pu.Delta = Delta;
    pu.tau = tau;
    pu.t_start = t_start;
    pu.lambda = std::hypot(Omega, Delta);
    if (pu.lambda == 0.0) return pu;  // no drive, no detuning: identity
    const double half = 0.5 * pu.lambda * tau;
    const double s = std::sin(half);
    pu.u = std::cos(half);
    pu.v = Delta / pu.lambda * s;
    pu.w = Omega / pu.lambda * s;
    for (double* x : {&pu.u, &pu.v, &pu.w}) {
      if (std::abs(*x) < kRoundoff) *x = 0.0;
    }
    return pu;
  }

  std::pair<Amplitude, Amplitude> apply(Amplitude c_m, Amplitude c_p) const {
    constexpr Amplitude i{0.0, 1.0};
    const double t_end = t_start + tau;
    const Amplitude stay_m = Amplitude{u, v} * std::polar(1.0, -0.5 * Delta * tau);
    const Amplitude stay_p = Amplitude{u, -v} * std::polar(1.0, 0.5 * Delta * tau);
    const Amplitude up = i * w * std::polar(1.0, 0.5 * Delta * (t_start + t_end));
    const Amplitude down = i * w * std::polar(1.0, -0.5 * Delta * (t_start + t_end));
    return {stay_m * c_m + down * c_p, up * c_m + stay_p * c_p};
  }
};

/// Returns (C_m', C_p') after a pulse of Rabi frequency Omega and duration tau starting at t_start.
inline std::pair<Amplitude, Amplitude> pair_update(Amplitude c_m, Amplitude c_p, double Delta, double Omega, double tau,
                                                   double t_start) {
  return PairUpdate::make(Delta, Omega, tau, t_start).apply(c_m, c_p);
}

/// Spin whose Larmor frequency is nearest to nu. Throws if nu lies outside every band w_k +- 2J.
inline std::size_t resonant_spin(double nu, const ChainParams& p) {
  const double pos = (nu - p.omega0) / p.delta_omega;
  const double clamped = std::clamp(std::round(pos), 0.0, static_cast<double>(p.L - 1));
  const auto k = static_cast<std::size_t>(clamped);
  if (!(std::abs(nu - larmor_frequency(k, p)) <= 2.0 * p.J)) {
    throw std::domain_error("resonant_spin: frequency " + csv::num(nu) + " addresses no spin of the chain");
  }
  return k;
}

/// Pruned interaction-picture amplitudes C_p over basis states of one chain.
class SparseState {
 public:
  using Map = std::unordered_map<BasisState, Amplitude, BasisStateHash>;

  SparseState() = default;
  explicit SparseState(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  static SparseState basis(const BasisState& s) {
    SparseState st(s.size());
    st.amplitudes_[s] = 1.0;
    return st;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  double time() const { return t_; }
  double dropped() const { return dropped_; }
  std::size_t active_count() const { return amplitudes_.size(); }
  const Map& amplitudes() const { return amplitudes_; }

  void set_amplitude(const BasisState& s, Amplitude c) {
    if (s.size() != num_qubits_) throw std::invalid_argument("SparseState: state length mismatch");
    if (c == Amplitude{}) {
      amplitudes_.erase(s);
    } else {
      amplitudes_[s] = c;
    }
  }

  Amplitude amplitude(const BasisState& s) const {
    auto it = amplitudes_.find(s);
    return it == amplitudes_.end() ? Amplitude{} : it->second;
  }

  double probability(const BasisState& s) const { return std::norm(amplitude(s)); }

  /// Sum of |C|^2 over retained states (excludes dropped probability).
  double norm_squared() const {
    double sum = 0.0;
    for (const auto& entry : sorted_by_probability()) sum += entry.second;
    return sum;
  }

  /// (state, probability) in descending probability, ties broken by ascending state.
  std::vector<std::pair<BasisState, double>> sorted_by_probability() const {
    std::vector<std::pair<BasisState, double>> out;
    out.reserve(amplitudes_.size());
    for (const auto& [s, c] : amplitudes_) out.emplace_back(s, std::norm(c));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    return out;
  }

 private:
  friend SparseState apply_pulse(SparseState state, const Pulse& pulse, const ChainParams& params, double p_drop,
                                 std::size_t max_active);

  Map amplitudes_;
  std::size_t num_qubits_ = 0;
  double t_ = 0.0;
  double dropped_ = 0.0;
};

/// Default ceiling on retained states; exceeding it means the pruning threshold is too low for the chain.
inline constexpr std::size_t kDefaultMaxActiveStates = std::size_t{1} << 22;

/// One pulse in the resonance approximation: every active state couples only to its partner with the
/// addressed spin flipped. Each pair is updated once, time advances by tau, and states with
/// |C|^2 < p_drop are removed and accounted in dropped().
inline SparseState apply_pulse(SparseState state, const Pulse& pulse, const ChainParams& params, double p_drop,
                               std::size_t max_active = kDefaultMaxActiveStates) {
  if (state.num_qubits_ != params.L) throw std::invalid_argument("apply_pulse: state does not match chain length");
  if (!(p_drop >= 0.0 && p_drop < 1.0)) throw std::invalid_argument("apply_pulse: P_drop must lie in [0, 1)");
  if (pulse.phase != 0.0) throw std::invalid_argument("apply_pulse: only zero-phase pulses are supported");
  if (!(pulse.tau >= 0.0)) throw std::invalid_argument("apply_pulse: negative pulse duration");

  const std::size_t k = resonant_spin(pulse.nu, params);
  const double t0 = state.t_;

  SparseState::Map next;
  next.reserve(2 * state.amplitudes_.size());
  auto keep = [&](const BasisState& s, Amplitude c) {
    if (c == Amplitude{}) return;
    const double prob = std::norm(c);
    if (prob < p_drop) {
      state.dropped_ += prob;
    } else {
      next.emplace(s, c);
    }
  };

  for (const auto& [s, c] : state.amplitudes_) {
    const BasisState lo = s[k] ? s.flipped(k) : s;
    const BasisState hi = s[k] ? s : s.flipped(k);
    // Each pair is visited once: from its bit-0 member if present, else from the bit-1 member.
    if (s[k] && state.amplitudes_.count(lo) != 0) continue;

    const Amplitude c_lo = s[k] ? Amplitude{} : c;
    const Amplitude c_hi = s[k] ? c : state.amplitude(hi);
    const double spacing = signed_spacing(lo, k, params);  // E(hi) - E(lo)
    if (spacing >= 0.0) {
      const auto [m, p] = pair_update(c_lo, c_hi, spacing - pulse.nu, pulse.Omega, pulse.tau, t0);
      keep(lo, m);
      keep(hi, p);
    } else {
      const auto [m, p] = pair_update(c_hi, c_lo, -spacing - pulse.nu, pulse.Omega, pulse.tau, t0);
      keep(hi, m);
      keep(lo, p);
    }
  }
  if (next.size() > max_active) {
    throw std::length_error("apply_pulse: " + std::to_string(next.size()) + " active states exceed the limit of " +
                            std::to_string(max_active) + "; raise P_drop");
  }
  state.amplitudes_ = std::move(next);
  state.t_ = t0 + pulse.tau;
  return state;
}

struct RunReport {
  std::vector<std::size_t> active_states;     // after each pulse
  std::vector<double> dropped_cumulative;     // after each pulse
  double dropped = 0.0;
  double wall_seconds = 0.0;
};

inline std::pair<SparseState, RunReport> run_protocol(SparseState initial, const PulseSequence& seq,
                                                      const ChainParams& params, double p_drop,
                                                      std::size_t max_active = kDefaultMaxActiveStates) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.active_states.reserve(seq.size());
  report.dropped_cumulative.reserve(seq.size());
  for (const auto& pulse : seq.pulses) {
    initial = apply_pulse(std::move(initial), pulse, params, p_drop, max_active);
    report.active_states.push_back(initial.active_count());
    report.dropped_cumulative.push_back(initial.dropped());
  }
  report.dropped = initial.dropped();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(initial), std::move(report)};
}

/// Unwanted states after the protocol acted on |0...0>.
struct Census {
  std::size_t count = 0;  // states other than |0...0> with probability >= threshold
  double P1_num = 0.0;    // all probability that left |0...0>, including pruned probability
  double P1cal_num = 0.0; // retained probability with target (bit 0) = 1 and control (bit L-1) = 0
  std::vector<std::pair<BasisState, double>> table;  // the counted states, descending probability
};

inline Census unwanted_census(const SparseState& final_state, std::size_t L, double threshold) {
  if (final_state.num_qubits() != L) throw std::invalid_argument("unwanted_census: chain length mismatch");
  Census census;
  const BasisState ground(L);
  for (const auto& [s, prob] : final_state.sorted_by_probability()) {
    if (s == ground) continue;
    census.P1_num += prob;
    if (s[0] && !s[L - 1]) census.P1cal_num += prob;
    if (prob >= threshold) {
      ++census.count;
      census.table.emplace_back(s, prob);
    }
  }
  census.P1_num += final_state.dropped();
  return census;
}

/// CSV: state,probability,amplitude_re,amplitude_im in descending probability.
inline void write_state_csv(std::ostream& out, const SparseState& st) {
  out << "state,probability,amplitude_re,amplitude_im\n";
  for (const auto& [s, prob] : st.sorted_by_probability()) {
    const Amplitude c = st.amplitude(s);
    csv::row(out, {s.to_string(), csv::num(prob), csv::num(c.real()), csv::num(c.imag())});
  }
}

/// CSV: pulse_index,active_states,dropped_cumulative (pulse_index is 1-based).
inline void write_report_csv(std::ostream& out, const RunReport& report) {
  out << "pulse_index,active_states,dropped_cumulative\n";
  for (std::size_t i = 0; i < report.active_states.size(); ++i) {
    csv::row(out, {csv::num(i + 1), csv::num(report.active_states[i]), csv::num(report.dropped_cumulative[i])});
  }
}

}  // namespace spinchain
