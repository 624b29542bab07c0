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

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/csv.hpp"

namespace spinchain {

/// Probability that a pulse moves population across a pair detuned by Delta:
/// (Omega/lambda)^2 sin^2(lambda tau / 2), lambda = sqrt(Omega^2 + Delta^2).
inline double epsilon(double Omega, double Delta, double tau) {
  if (!(Omega > 0.0)) throw std::invalid_argument("epsilon: Omega must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("epsilon: tau must be positive");
  const double lambda = std::hypot(Omega, Delta);
  const double ratio = Omega / lambda;
  const double s = std::sin(0.5 * lambda * tau);
  return ratio * ratio * s * s;
}

/// epsilon for a pi-pulse (tau = pi / Omega).
inline double epsilon_pi(double Omega, double Delta) { return epsilon(Omega, Delta, std::numbers::pi / Omega); }

/// Rabi frequency at which a pi-pulse leaves a pair detuned by Delta exactly unexcited:
/// the pair precesses through k whole turns, Omega_k = |Delta| / sqrt(4k^2 - 1).
inline double suppression_rabi(double Delta, int k) {
  if (k < 1) throw std::invalid_argument("suppression_rabi: k must be >= 1");
  if (Delta == 0.0) throw std::invalid_argument("suppression_rabi: Delta must be nonzero");
  const double kk = static_cast<double>(k);
  return std::abs(Delta) / std::sqrt(4.0 * kk * kk - 1.0);
}

/// Number of first-order unwanted states produced by the CN protocol: 2L - 3.
inline std::size_t n1(std::size_t L) {
  if (L < 3) throw std::invalid_argument("n1: L must be >= 3");
  return 2 * L - 3;
}

struct FirstOrderFamilies {
  std::vector<BasisState> target_one;   // |0..0 1..1>: run of 1s through bit 0, lengths 1..L-1
  std::vector<BasisState> target_zero;  // |0..0 1..1 0>: run of 1s ending at bit 1, lengths 1..L-2
};

inline FirstOrderFamilies first_order_states(std::size_t L) {
  if (L < 3) throw std::invalid_argument("first_order_states: L must be >= 3");
  FirstOrderFamilies f;
  for (std::size_t run = L - 1; run >= 1; --run) {
    BasisState a(L);
    for (std::size_t k = 0; k < run; ++k) a.set(k, true);
    f.target_one.push_back(a);
  }
  for (std::size_t run = L - 2; run >= 1; --run) {
    BasisState b(L);
    for (std::size_t k = 1; k <= run; ++k) b.set(k, true);
    f.target_zero.push_back(b);
  }
  return f;
}

struct Estimate {
  double exact = 0.0;   // the finite sum
  double approx = 0.0;  // its closed second-order form
};

namespace detail {
inline void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(who) + ": probability outside [0, 1]");
}

/// Per-pulse error of the CN protocol on |0...0>: eps everywhere, eps_prime on pulse 3 (index 2).
inline double pulse_error(std::size_t index, double eps, double eps_prime) { return index == 2 ? eps_prime : eps; }
}  // namespace detail

/// Total probability of unwanted states. Pulse n spawns one unwanted state from the ground state,
/// which has been depleted by all earlier pulses:
///   exact  = sum_n eps_n (1 - sum_{j<n} eps_j)  ->  eps sum_{n=0}^{2L-4} (1 - n eps)  when eps_prime = eps
///   approx = E (1 - E/2),  E = (2L - 3) eps.
/// A negative eps_prime means "same as eps".
inline Estimate p1_total(std::size_t L, double eps, double eps_prime = -1.0) {
  if (eps_prime < 0.0) eps_prime = eps;
  detail::check_probability(eps, "p1_total");
  detail::check_probability(eps_prime, "p1_total");
  const std::size_t pulses = n1(L);
  Estimate e;
  double depleted = 0.0;
  for (std::size_t n = 0; n < pulses; ++n) {
    const double en = detail::pulse_error(n, eps, eps_prime);
    e.exact += en * (1.0 - depleted);
    depleted += en;
  }
  const double big_e = static_cast<double>(pulses) * eps;
  e.approx = big_e * (1.0 - 0.5 * big_e);
  return e;
}

/// Probability of target = 1 with control = 0. The target-one family is spawned by pulse 1 and by
/// every even pulse 2n+2, n = 0..L-3:
///   exact  = eps_1 + sum_n eps (1 - sum_{j<=2n+1} eps_j)  ->  eps + eps sum_{n=0}^{L-3} (1 - (2n+1) eps)
///   approx = Gamma (1 - Gamma),  Gamma = (L - 2) eps.
inline Estimate p1_target(std::size_t L, double eps, double eps_prime = -1.0) {
  if (eps_prime < 0.0) eps_prime = eps;
  detail::check_probability(eps, "p1_target");
  detail::check_probability(eps_prime, "p1_target");
  const std::size_t pulses = n1(L);
  Estimate e;
  double depleted = 0.0;
  for (std::size_t n = 0; n < pulses; ++n) {
    const double en = detail::pulse_error(n, eps, eps_prime);
    const std::size_t number = n + 1;  // 1-based pulse number
    if (number == 1 || number % 2 == 0) e.exact += en * (1.0 - depleted);
    depleted += en;
  }
  const double gamma = static_cast<double>(L - 2) * eps;
  e.approx = gamma * (1.0 - gamma);
  return e;
}

enum class Regime { BelowEps1, Eps1ToEps2, Eps2ToEps3, AboveEps3 };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::BelowEps1: return "below-eps1";
    case Regime::Eps1ToEps2: return "eps1-eps2";
    case Regime::Eps2ToEps3: return "eps2-eps3";
    case Regime::AboveEps3: return "above-eps3";
  }
  return "?";
}

/// Thresholds eps1 = P0, eps2 = sqrt(P0), eps3 = P0^(1/3); a value on a boundary belongs to the lower regime.
inline Regime regime(double eps, double P0) {
  if (!(P0 > 0.0 && P0 < 1.0)) throw std::invalid_argument("regime: P0 must lie in (0, 1)");
  if (eps <= P0) return Regime::BelowEps1;
  if (eps <= std::sqrt(P0)) return Regime::Eps1ToEps2;
  if (eps <= std::cbrt(P0)) return Regime::Eps2ToEps3;
  return Regime::AboveEps3;
}

struct PatternProbability {
  std::string_view pattern;
  double probability;
};

/// Probability-level bookkeeping after the third pulse on |0...0> (amplitudes ignored).
inline std::array<PatternProbability, 4> u3_table(double eps, double eps_prime) {
  detail::check_probability(eps, "u3_table");
  detail::check_probability(eps_prime, "u3_table");
  const double q = 1.0 - eps;
  return {{
      {"|0000...>", q * q * (1.0 - eps_prime)},
      {"|0100...>", eps_prime * q * q},
      {"|0010...>", eps * (1.0 - eps + eps * eps)},
      {"|0110...>", eps * (1.0 - eps * eps)},
  }};
}

/// Analytic error summary for the CN protocol at (L, Omega). Generic pulses see |Delta| = 2J,
/// the third pulse |Delta| = 4J.
struct ErrorBudget {
  std::size_t L = 0;
  double Omega = 0.0;
  double J = 1.0;
  double P0 = 1e-6;
  double eps = 0.0;
  double eps_prime = 0.0;
  std::size_t N1 = 0;
  Estimate P1;
  Estimate P1cal;
  double E = 0.0;
  double Gamma = 0.0;
  Regime regime = Regime::BelowEps1;
};

inline ErrorBudget error_budget(std::size_t L, double Omega, double J = 1.0, double P0 = 1e-6) {
  ErrorBudget b;
  b.L = L;
  b.Omega = Omega;
  b.J = J;
  b.P0 = P0;
  b.eps = epsilon_pi(Omega, 2.0 * J);
  b.eps_prime = epsilon_pi(Omega, 4.0 * J);
  b.N1 = n1(L);
  b.P1 = p1_total(L, b.eps, b.eps_prime);
  b.P1cal = p1_target(L, b.eps, b.eps_prime);
  b.E = static_cast<double>(b.N1) * b.eps;
  b.Gamma = static_cast<double>(L - 2) * b.eps;
  b.regime = spinchain::regime(b.eps, P0);
  return b;
}

inline void write_budget_header(std::ostream& out) {
  out << "L,Omega,J,P0,eps,eps_prime,N1,P1_exact,P1_approx,P1cal_exact,P1cal_approx,E,Gamma,regime\n";
}

inline void write_budget_row(std::ostream& out, const ErrorBudget& b) {
  csv::row(out, {csv::num(b.L), csv::num(b.Omega), csv::num(b.J), csv::num(b.P0), csv::num(b.eps),
                 csv::num(b.eps_prime), csv::num(b.N1), csv::num(b.P1.exact), csv::num(b.P1.approx),
                 csv::num(b.P1cal.exact), csv::num(b.P1cal.approx), csv::num(b.E), csv::num(b.Gamma),
                 to_string(b.regime)});
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Sub-intervals of (lo, hi) where a pi-pulse keeps epsilon below P0 for every detuning in `deltas`.
/// Scans a uniform grid of spacing `step` and refines each edge by bisection.
inline std::vector<Interval> suppression_windows(const std::vector<double>& deltas, double lo, double hi, double P0,
                                                 double step = 1e-6) {
  if (!(lo > 0.0 && hi > lo && step > 0.0)) throw std::invalid_argument("suppression_windows: bad scan range");
  auto inside = [&](double omega) {
    for (double d : deltas) {
      if (!(epsilon_pi(omega, d) < P0)) return false;
    }
    return true;
  };
  auto refine = [&](double a, double b) {  // inside(a) != inside(b)
    const bool at_a = inside(a);
    for (int i = 0; i < 60; ++i) {
      const double m = 0.5 * (a + b);
      (inside(m) == at_a ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  std::vector<Interval> out;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  double prev = lo;
  bool prev_in = inside(prev);
  double start = lo;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = std::min(hi, lo + static_cast<double>(i) * step);
    const bool now = inside(x);
    if (now && !prev_in) start = refine(prev, x);
    if (!now && prev_in) out.push_back({start, refine(prev, x)});
    prev = x;
    prev_in = now;
  }
  if (prev_in) out.push_back({start, hi});
  return out;
}

}  // namespace spinchain
