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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/csv.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {

/// Rectangular rf pulse with a circularly polarized field.
struct Pulse {
  double nu = 0.0;     // carrier frequency
  double Omega = 0.0;  // Rabi frequency
  double tau = 0.0;    // duration
  double phase = 0.0;  // radians; only 0 is supported by the propagators

  static Pulse pi_pulse(double nu, double Omega) {
    if (!(Omega > 0.0)) throw std::invalid_argument("Pulse: Rabi frequency must be positive");
    return Pulse{nu, Omega, std::numbers::pi / Omega, 0.0};
  }
};

/// Intended single-spin flip of a protocol pulse on the control = 1 branch.
struct Transition {
  std::size_t flip_qubit = 0;
  BasisState from;
  BasisState to;
};

struct PulseSequence {
  std::vector<Pulse> pulses;
  /// Either empty or one entry per pulse.
  std::vector<Transition> transitions;

  std::size_t size() const { return pulses.size(); }
  bool annotated() const { return !pulses.empty() && transitions.size() == pulses.size(); }
};

/// Control = 1 branch of the remote CN gate: |10..0> -> |110..0> -> |1110..0> -> |1010..0> -> ... -> |10..01>.
/// Flips qubit L-2, then for j = L-3 down to 0 flips j and un-flips j+1. Returns 2L-2 states.
inline std::vector<BasisState> cn_trajectory(const ChainParams& p) {
  if (p.L < 3) {
    throw std::invalid_argument("cn_trajectory: the remote CN protocol needs L >= 3 (got " + std::to_string(p.L) + ")");
  }
  std::vector<BasisState> out;
  out.reserve(2 * p.L - 2);
  BasisState s(p.L);
  s.set(p.L - 1, true);
  out.push_back(s);
  s = s.flipped(p.L - 2);
  out.push_back(s);
  for (std::size_t j = p.L - 2; j-- > 0;) {
    s = s.flipped(j);
    out.push_back(s);
    s = s.flipped(j + 1);
    out.push_back(s);
  }
  return out;
}

namespace detail {
inline std::size_t differing_qubit(const BasisState& a, const BasisState& b) {
  std::size_t found = a.size();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) {
      if (found != a.size()) throw std::logic_error("trajectory step flips more than one qubit");
      found = k;
    }
  }
  if (found == a.size()) throw std::logic_error("trajectory step flips no qubit");
  return found;
}
}  // namespace detail

/// 2L-3 resonant pi-pulses driving the control = 1 branch along cn_trajectory().
/// Frequencies come from level spacings, so every pulse has zero detuning on that branch.
inline PulseSequence cn_remote_protocol(const ChainParams& p, double Omega) {
  p.validate();
  if (!(Omega > 0.0)) throw std::invalid_argument("cn_remote_protocol: Omega must be positive");
  const auto path = cn_trajectory(p);
  PulseSequence seq;
  seq.pulses.reserve(path.size() - 1);
  seq.transitions.reserve(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const std::size_t k = detail::differing_qubit(path[i], path[i + 1]);
    seq.pulses.push_back(Pulse::pi_pulse(transition_frequency(path[i], k, p), Omega));
    seq.transitions.push_back(Transition{k, path[i], path[i + 1]});
  }
  return seq;
}

/// |detuning| each pulse has on the all-zeros (control = 0) branch.
/// For the CN protocol this is 2J everywhere except the third pulse, which sees 4J.
inline std::vector<double> ground_branch_detunings(const PulseSequence& seq, const ChainParams& p) {
  if (!seq.annotated()) throw std::invalid_argument("ground_branch_detunings: sequence lacks transition annotations");
  const BasisState ground(p.L);
  std::vector<double> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.push_back(std::abs(transition_frequency(ground, seq.transitions[i].flip_qubit, p) - seq.pulses[i].nu));
  }
  return out;
}

/// CSV: index,nu,Omega,tau,phase,flip_qubit,from_state,to_state (index is 1-based).
inline void write_protocol_csv(std::ostream& out, const PulseSequence& seq) {
  out << "index,nu,Omega,tau,phase,flip_qubit,from_state,to_state\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& pl = seq.pulses[i];
    std::string flip, from, to;
    if (seq.annotated()) {
      flip = csv::num(seq.transitions[i].flip_qubit);
      from = seq.transitions[i].from.to_string();
      to = seq.transitions[i].to.to_string();
    }
    csv::row(out, {csv::num(i + 1), csv::num(pl.nu), csv::num(pl.Omega), csv::num(pl.tau), csv::num(pl.phase), flip,
                   from, to});
  }
}

}  // namespace spinchain
