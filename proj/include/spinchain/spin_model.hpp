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
#include <stdexcept>
#include <string>

#include "spinchain/basis_state.hpp"
#include "spinchain/config.hpp"

namespace spinchain {

/// Static description of an open Ising chain in a linear field gradient.
/// All frequencies are in units where J is O(1).
struct ChainParams {
  std::size_t L = 2;
  double J = 1.0;
  double omega0 = 100.0;
  double delta_omega = 20.0;

  /// Throws std::invalid_argument unless the chain is physically addressable:
  /// L >= 2, J > 0, and delta_omega > 4J so transition bands of distinct spins never overlap.
  void validate() const {
    if (L < 2 || L > BasisState::kMaxQubits) {
      throw std::invalid_argument("ChainParams: L must be in [2, " + std::to_string(BasisState::kMaxQubits) + "]");
    }
    if (!(J > 0.0) || !std::isfinite(J)) throw std::invalid_argument("ChainParams: J must be positive");
    if (!std::isfinite(omega0)) throw std::invalid_argument("ChainParams: omega0 must be finite");
    if (!(delta_omega > 4.0 * J) || !std::isfinite(delta_omega)) {
      throw std::invalid_argument("ChainParams: delta_omega must exceed 4J");
    }
  }

  /// Reads keys L, J, omega0, delta_omega; missing keys keep their defaults.
  static ChainParams from_config(const KeyValueConfig& cfg) {
    ChainParams p;
    const long long L = cfg.get_int("L", static_cast<long long>(p.L));
    if (L < 0) throw ConfigError("config: L must be non-negative");
    p.L = static_cast<std::size_t>(L);
    p.J = cfg.get_double("J", p.J);
    // Defaults scale with J so a config that only changes J keeps the same geometry.
    p.omega0 = cfg.get_double("omega0", 100.0 * p.J);
    p.delta_omega = cfg.get_double("delta_omega", 20.0 * p.J);
    p.validate();
    return p;
  }
};

/// z-projection of spin k: +1/2 for bit 0, -1/2 for bit 1.
inline double spin_z(const BasisState& s, std::size_t k) { return s[k] ? -0.5 : 0.5; }

inline double larmor_frequency(std::size_t k, const ChainParams& p) {
  if (k >= p.L) {
    throw std::out_of_range("larmor_frequency: qubit " + std::to_string(k) + " outside chain of " + std::to_string(p.L));
  }
  return p.omega0 + static_cast<double>(k) * p.delta_omega;
}

namespace detail {
inline void check_state(const BasisState& s, const ChainParams& p) {
  if (s.size() != p.L) {
    throw std::invalid_argument("state " + s.to_ket() + " does not match chain length " + std::to_string(p.L));
  }
}
}  // namespace detail

/// Diagonal energy E = -sum_k w_k m_k - 2J sum_{k<L-1} m_k m_{k+1} of an open chain.
inline double energy(const BasisState& s, const ChainParams& p) {
  detail::check_state(s, p);
  double zeeman = 0.0;
  double ising = 0.0;
  for (std::size_t k = 0; k < p.L; ++k) {
    zeeman += larmor_frequency(k, p) * spin_z(s, k);
    if (k + 1 < p.L) ising += spin_z(s, k) * spin_z(s, k + 1);
  }
  return -zeeman - 2.0 * p.J * ising;
}

/// Signed level spacing E(bit k = 1) - E(bit k = 0), with the other bits taken from `s`.
/// Evaluated locally, so it is exact for any chain length.
inline double signed_spacing(const BasisState& s, std::size_t k, const ChainParams& p) {
  detail::check_state(s, p);
  double neighbours = 0.0;
  if (k > 0) neighbours += spin_z(s, k - 1);
  if (k + 1 < p.L) neighbours += spin_z(s, k + 1);
  return larmor_frequency(k, p) + 2.0 * p.J * neighbours;
}

/// |E(flip(s, k)) - E(s)|.
inline double transition_frequency(const BasisState& s, std::size_t k, const ChainParams& p) {
  return std::abs(signed_spacing(s, k, p));
}

}  // namespace spinchain
