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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/pulse_protocol.hpp"
#include "spinchain/resonance_propagator.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {

inline constexpr std::size_t kDefaultExactQubitCap = 12;

/// Full 2^L interaction-picture state. Index i holds the basis state whose qubit k is bit k of i.
struct DenseState {
  std::size_t L = 0;
  Eigen::VectorXcd amplitudes;
  double t = 0.0;

  static DenseState basis(const BasisState& s) {
    if (s.size() >= 63) throw std::invalid_argument("DenseState: chain too long for a dense vector");
    DenseState d;
    d.L = s.size();
    d.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << d.L);
    d.amplitudes(static_cast<Eigen::Index>(s.low_word())) = 1.0;
    return d;
  }

  static DenseState from_sparse(const SparseState& sp) {
    DenseState d = basis(BasisState(sp.num_qubits()));
    d.amplitudes.setZero();
    for (const auto& [s, c] : sp.amplitudes()) d.amplitudes(static_cast<Eigen::Index>(s.low_word())) = c;
    d.t = sp.time();
    return d;
  }

  BasisState state_at(std::size_t index) const { return BasisState::from_bits(L, index); }

  std::vector<double> probabilities() const {
    std::vector<double> out(static_cast<std::size_t>(amplitudes.size()));
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) out[static_cast<std::size_t>(i)] = std::norm(amplitudes(i));
    return out;
  }
};

namespace detail {

inline void check_cap(std::size_t L, std::size_t cap, const char* who) {
  if (L == 0 || L > cap) {
    throw std::invalid_argument(std::string(who) + ": chain length " + std::to_string(L) + " exceeds the dense cap of " +
                                std::to_string(cap));
  }
}

inline double total_spin_z(const BasisState& s) {
  return 0.5 * static_cast<double>(s.size()) - static_cast<double>(s.popcount());
}

inline std::vector<double> all_energies(const ChainParams& p) {
  std::vector<double> e(std::size_t{1} << p.L);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = energy(BasisState::from_bits(p.L, i), p);
  return e;
}

}  // namespace detail

/// Time-independent generator in the frame co-rotating with the carrier:
///   H_rot = -sum_k (w_k - nu) I^z_k - 2J sum_k I^z_k I^z_{k+1} - Omega sum_k I^x_k.
/// No rotating-wave approximation is involved because the drive is circularly polarized.
inline Eigen::MatrixXcd rotating_frame_generator(const Pulse& pulse, const ChainParams& p,
                                                 std::size_t cap = kDefaultExactQubitCap) {
  detail::check_cap(p.L, cap, "rotating_frame_generator");
  if (pulse.phase != 0.0) throw std::invalid_argument("rotating_frame_generator: only zero-phase pulses are supported");
  const auto dim = Eigen::Index{1} << p.L;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto s = BasisState::from_bits(p.L, static_cast<std::uint64_t>(i));
    h(i, i) = energy(s, p) + pulse.nu * detail::total_spin_z(s);
    for (std::size_t k = 0; k < p.L; ++k) {
      h(i ^ (Eigen::Index{1} << k), i) = -0.5 * pulse.Omega;
    }
  }
  return h;
}

/// Exact propagation of all 2^L amplitudes through `seq`, one Hermitian eigendecomposition per pulse.
///
/// Interaction-picture amplitudes relate to the rotating frame by
///   phi_p(t) = exp(-i nu t M_p) exp(-i E_p t) C_p(t),  M_p = total z-projection of |p>.
inline DenseState evolve_exact(DenseState state, const PulseSequence& seq, const ChainParams& p,
                               std::size_t cap = kDefaultExactQubitCap) {
  detail::check_cap(p.L, cap, "evolve_exact");
  if (state.L != p.L) throw std::invalid_argument("evolve_exact: state does not match chain length");
  const auto dim = Eigen::Index{1} << p.L;
  const auto energies = detail::all_energies(p);
  std::vector<double> mz(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    mz[static_cast<std::size_t>(i)] = detail::total_spin_z(BasisState::from_bits(p.L, static_cast<std::uint64_t>(i)));
  }

  Eigen::VectorXcd phi(dim);
  for (const auto& pulse : seq.pulses) {
    const double t0 = state.t;
    const double t1 = t0 + pulse.tau;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto u = static_cast<std::size_t>(i);
      phi(i) = std::polar(1.0, -(pulse.nu * mz[u] + energies[u]) * t0) * state.amplitudes(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rotating_frame_generator(pulse, p, cap));
    if (eig.info() != Eigen::Success) throw std::runtime_error("evolve_exact: eigendecomposition failed");
    Eigen::VectorXcd rotated = eig.eigenvectors().adjoint() * phi;
    for (Eigen::Index j = 0; j < dim; ++j) rotated(j) *= std::polar(1.0, -eig.eigenvalues()(j) * pulse.tau);
    phi = eig.eigenvectors() * rotated;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto u = static_cast<std::size_t>(i);
      state.amplitudes(i) = std::polar(1.0, (pulse.nu * mz[u] + energies[u]) * t1) * phi(i);
    }
    state.t = t1;
  }
  return state;
}

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TdseOptions {
  double tolerance = 1e-9;             // max componentwise change between step counts n and 2n
  std::size_t max_steps = std::size_t{1} << 22;
};

namespace detail {

/// Fixed-step RK4 on i dC_p/dt = sum_m V_pm exp(i (E_p - E_m) t + i r_pm nu t) C_m.
inline Eigen::VectorXcd rk4_interaction_picture(const Eigen::VectorXcd& c0, double t0, const Pulse& pulse,
                                                const ChainParams& p, const std::vector<double>& energies,
                                                std::size_t steps) {
  const auto dim = c0.size();
  const double h = pulse.tau / static_cast<double>(steps);
  const double coupling = -0.5 * pulse.Omega;
  auto rhs = [&](double t, const Eigen::VectorXcd& c) {
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (std::size_t k = 0; k < p.L; ++k) {
        const Eigen::Index b = a ^ (Eigen::Index{1} << k);
        const double gap = energies[static_cast<std::size_t>(a)] - energies[static_cast<std::size_t>(b)];
        const double r = gap > 0.0 ? -1.0 : 1.0;
        const Amplitude phase = std::polar(1.0, (gap + r * pulse.nu) * t);
        d(a) += Amplitude{0.0, -1.0} * coupling * phase * c(b);
      }
    }
    return d;
  };
  Eigen::VectorXcd c = c0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = t0 + static_cast<double>(n) * h;
    const Eigen::VectorXcd k1 = rhs(t, c);
    const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, c + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, c + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = rhs(t + h, c + h * k3);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return c;
}

}  // namespace detail

/// Direct small-step integration of the interaction-picture amplitude equations for one pulse.
/// Starts from `steps` and doubles until two successive resolutions agree to options.tolerance.
/// Used to referee the frame conventions of evolve_exact(); chains of at most 3 spins.
inline DenseState integrate_tdse(DenseState state, const Pulse& pulse, const ChainParams& p, std::size_t steps,
                                 TdseOptions options = {}) {
  detail::check_cap(p.L, 3, "integrate_tdse");
  if (state.L != p.L) throw std::invalid_argument("integrate_tdse: state does not match chain length");
  if (pulse.phase != 0.0) throw std::invalid_argument("integrate_tdse: only zero-phase pulses are supported");
  if (pulse.tau == 0.0) return state;
  if (steps == 0) steps = 1;
  const auto energies = detail::all_energies(p);
  Eigen::VectorXcd coarse = detail::rk4_interaction_picture(state.amplitudes, state.t, pulse, p, energies, steps);
  for (std::size_t n = 2 * steps; n <= options.max_steps; n *= 2) {
    Eigen::VectorXcd fine = detail::rk4_interaction_picture(state.amplitudes, state.t, pulse, p, energies, n);
    if ((fine - coarse).cwiseAbs().maxCoeff() <= options.tolerance) {
      state.amplitudes = std::move(fine);
      state.t += pulse.tau;
      return state;
    }
    coarse = std::move(fine);
  }
  throw ConvergenceError("integrate_tdse: no convergence within " + std::to_string(options.max_steps) + " steps");
}

/// Total variation distance 1/2 sum |p_i - q_i| between the dense distribution and a sparse one.
inline double total_variation_distance(const DenseState& dense, const SparseState& sparse) {
  if (dense.L != sparse.num_qubits()) throw std::invalid_argument("total_variation_distance: chain length mismatch");
  auto probs = dense.probabilities();
  std::vector<double> other(probs.size(), 0.0);
  for (const auto& [s, c] : sparse.amplitudes()) other[s.low_word()] = std::norm(c);
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) sum += std::abs(probs[i] - other[i]);
  return 0.5 * sum;
}

}  // namespace spinchain
