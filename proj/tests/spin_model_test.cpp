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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "spinchain/basis_state.hpp"
#include "spinchain/config.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {
namespace {

ChainParams chain(std::size_t L, double omega0 = 100.0, double delta_omega = 20.0, double J = 1.0) {
  ChainParams p;
  p.L = L;
  p.J = J;
  p.omega0 = omega0;
  p.delta_omega = delta_omega;
  return p;
}

// Diagonal of H0 assembled from Kronecker products of single-spin I^z diagonals, qubit 0 fastest.
std::vector<double> kron_diagonal_energies(const ChainParams& p) {
  const std::size_t dim = std::size_t{1} << p.L;
  auto iz = [&](std::size_t k) {
    std::vector<double> d{1.0};
    for (std::size_t q = p.L; q-- > 0;) {
      const std::vector<double> factor = q == k ? std::vector<double>{0.5, -0.5} : std::vector<double>{1.0, 1.0};
      std::vector<double> next;
      next.reserve(d.size() * 2);
      for (double a : d) {
        for (double b : factor) next.push_back(a * b);
      }
      d = std::move(next);
    }
    return d;
  };
  std::vector<double> h(dim, 0.0);
  std::vector<std::vector<double>> z;
  for (std::size_t k = 0; k < p.L; ++k) z.push_back(iz(k));
  for (std::size_t k = 0; k < p.L; ++k) {
    const double wk = p.omega0 + static_cast<double>(k) * p.delta_omega;
    for (std::size_t i = 0; i < dim; ++i) {
      h[i] -= wk * z[k][i];
      if (k + 1 < p.L) h[i] -= 2.0 * p.J * z[k][i] * z[k + 1][i];
    }
  }
  return h;
}

TEST(BasisState, TextRoundTripAndBitOrder) {
  const auto s = BasisState::parse("|1001>");
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s[0]);
  EXPECT_FALSE(s[1]);
  EXPECT_TRUE(s[3]);
  EXPECT_EQ(s.to_string(), "1001");
  EXPECT_EQ(s.to_ket(), "|1001>");
  EXPECT_EQ(BasisState::parse(s.to_string()), s);
  EXPECT_EQ(s.flipped(1).to_string(), "1011");
  EXPECT_THROW(BasisState::parse("10a1"), std::invalid_argument);
  EXPECT_THROW(s.flipped(4), std::out_of_range);
}

TEST(BasisState, WideChainsBeyondOneWord) {
  BasisState s(200);
  s.set(150, true);
  s.set(3, true);
  EXPECT_EQ(s.popcount(), 2u);
  const auto t = BasisState::parse(s.to_string());
  EXPECT_EQ(t, s);
  EXPECT_NE(s.hash(), s.flipped(150).hash());
  EXPECT_LT(s.flipped(150), s);
}

TEST(ChainParams, ValidationRejectsOverlappingBands) {
  EXPECT_NO_THROW(chain(5).validate());
  EXPECT_THROW(chain(1).validate(), std::invalid_argument);
  EXPECT_THROW(chain(5, 100.0, 4.0).validate(), std::invalid_argument);
  EXPECT_THROW(chain(5, 100.0, 20.0, 0.0).validate(), std::invalid_argument);
}

TEST(ChainParams, FromConfig) {
  const auto cfg = KeyValueConfig::parse_string("L = 7\nJ=2 # coupling\n\ndelta_omega = 30\n");
  const auto p = ChainParams::from_config(cfg);
  EXPECT_EQ(p.L, 7u);
  EXPECT_DOUBLE_EQ(p.J, 2.0);
  EXPECT_DOUBLE_EQ(p.omega0, 200.0);
  EXPECT_DOUBLE_EQ(p.delta_omega, 30.0);
  EXPECT_THROW(ChainParams::from_config(KeyValueConfig::parse_string("J = abc")), ConfigError);
  EXPECT_THROW(ChainParams::from_config(KeyValueConfig::parse_string("delta_omega = 3")), std::invalid_argument);
  EXPECT_THROW(KeyValueConfig::parse_string("no equals sign"), ConfigError);
}

TEST(SpinModel, LarmorFrequencyIsALinearRamp) {
  const auto p = chain(8, 1000.0, 100.0);
  EXPECT_DOUBLE_EQ(larmor_frequency(0, p), 1000.0);
  EXPECT_DOUBLE_EQ(larmor_frequency(1, p), 1100.0);
  EXPECT_DOUBLE_EQ(larmor_frequency(5, p), 1500.0);
  EXPECT_THROW(larmor_frequency(8, p), std::out_of_range);
}

TEST(SpinModel, TwoSpinEnergies) {
  const auto p = chain(2);
  const double w0 = 100.0, w1 = 120.0, J = 1.0;
  EXPECT_DOUBLE_EQ(energy(BasisState::parse("00"), p), -(w0 + w1) / 2 - J / 2);  // -110.5
  EXPECT_DOUBLE_EQ(energy(BasisState::parse("01"), p), (w0 - w1) / 2 + J / 2);   // -9.5
  const double mix = energy(BasisState::parse("00"), p) + energy(BasisState::parse("11"), p) -
                     energy(BasisState::parse("01"), p) - energy(BasisState::parse("10"), p);
  EXPECT_DOUBLE_EQ(mix, -2.0 * J);
  EXPECT_THROW(energy(BasisState(3), p), std::invalid_argument);
}

TEST(SpinModel, EnergyMatchesKroneckerHamiltonianForAllStates) {
  for (std::size_t L = 2; L <= 10; ++L) {
    const auto p = chain(L, 37.0 + static_cast<double>(L), 11.5, 1.3);
    const auto h = kron_diagonal_energies(p);
    for (std::size_t i = 0; i < h.size(); ++i) {
      ASSERT_NEAR(energy(BasisState::from_bits(L, i), p), h[i], 1e-10) << "L=" << L << " i=" << i;
    }
  }
}

TEST(SpinModel, TransitionFrequencyCases) {
  const auto p = chain(6);
  BasisState s = BasisState::parse("000000");
  EXPECT_DOUBLE_EQ(transition_frequency(s, 3, p), larmor_frequency(3, p) + 2.0);
  s = BasisState::parse("010000");  // qubit 4 set, neighbour of 3
  EXPECT_DOUBLE_EQ(transition_frequency(s, 3, p), larmor_frequency(3, p));
  s = BasisState::parse("000010");  // edge spin 0 with neighbour bit 1
  EXPECT_DOUBLE_EQ(transition_frequency(s, 0, p), larmor_frequency(0, p) - 1.0);
  EXPECT_THROW(transition_frequency(s, 6, p), std::out_of_range);
}

TEST(SpinModel, TransitionFrequencyIsAnEnergyDifferenceAndSymmetric) {
  for (std::size_t L = 2; L <= 8; ++L) {
    const auto p = chain(L);
    for (std::size_t i = 0; i < (std::size_t{1} << L); ++i) {
      const auto s = BasisState::from_bits(L, i);
      for (std::size_t k = 0; k < L; ++k) {
        const double direct = std::abs(energy(s.flipped(k), p) - energy(s, p));
        ASSERT_NEAR(transition_frequency(s, k, p), direct, 1e-9);
        ASSERT_EQ(transition_frequency(s, k, p), transition_frequency(s.flipped(k), k, p));
      }
    }
  }
}

TEST(SpinModel, TransitionBandsOfDistinctSpinsAreDisjoint) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ratio(4.05, 40.0);
  for (std::size_t L = 2; L <= 10; ++L) {
    const double J = 1.0;
    const auto p = chain(L, 50.0, ratio(rng) * J, J);
    std::vector<std::set<double>> bands(L);
    for (std::size_t i = 0; i < (std::size_t{1} << L); ++i) {
      const auto s = BasisState::from_bits(L, i);
      for (std::size_t k = 0; k < L; ++k) bands[k].insert(transition_frequency(s, k, p));
    }
    for (std::size_t a = 0; a < L; ++a) {
      for (std::size_t b = a + 1; b < L; ++b) {
        ASSERT_LT(*bands[a].rbegin(), *bands[b].begin()) << "L=" << L << " spins " << a << "," << b;
      }
    }
  }
}

}  // namespace
}  // namespace spinchain
