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

#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spinchain/pulse_protocol.hpp"
#include "spinchain/spin_model.hpp"

namespace spinchain {
namespace {

ChainParams chain(std::size_t L) {
  ChainParams p;
  p.L = L;
  return p;
}

std::vector<std::string> strings(const std::vector<BasisState>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

TEST(CnTrajectory, SmallChains) {
  EXPECT_EQ(strings(cn_trajectory(chain(3))), (std::vector<std::string>{"100", "110", "111", "101"}));
  EXPECT_EQ(strings(cn_trajectory(chain(4))),
            (std::vector<std::string>{"1000", "1100", "1110", "1010", "1011", "1001"}));
  EXPECT_THROW(cn_trajectory(chain(2)), std::invalid_argument);
}

TEST(CnTrajectory, ShapeForAnyLength) {
  for (std::size_t L = 3; L <= 120; L += 13) {
    const auto path = cn_trajectory(chain(L));
    ASSERT_EQ(path.size(), 2 * L - 2);
    BasisState first(L), last(L);
    first.set(L - 1, true);
    last.set(L - 1, true);
    last.set(0, true);
    EXPECT_EQ(path.front(), first);
    EXPECT_EQ(path.back(), last);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      std::size_t flips = 0;
      for (std::size_t k = 0; k < L; ++k) flips += path[i][k] != path[i + 1][k];
      ASSERT_EQ(flips, 1u);
    }
  }
}

TEST(CnRemoteProtocol, PulseFrequencies) {
  const auto p = chain(6);
  const auto seq = cn_remote_protocol(p, 0.0906);
  ASSERT_EQ(seq.size(), 9u);
  ASSERT_TRUE(seq.annotated());
  EXPECT_DOUBLE_EQ(seq.pulses[0].nu, larmor_frequency(p.L - 2, p));
  EXPECT_DOUBLE_EQ(seq.pulses[2].nu, larmor_frequency(p.L - 2, p) - 2.0 * p.J);
  EXPECT_DOUBLE_EQ(seq.pulses.back().nu, larmor_frequency(1, p));
  EXPECT_DOUBLE_EQ(seq.pulses[seq.size() - 2].nu, larmor_frequency(0, p) - p.J);
  for (const auto& pl : seq.pulses) {
    EXPECT_DOUBLE_EQ(pl.Omega * pl.tau, std::numbers::pi);
    EXPECT_EQ(pl.phase, 0.0);
  }
  EXPECT_THROW(cn_remote_protocol(p, 0.0), std::invalid_argument);
  EXPECT_THROW(cn_remote_protocol(chain(2), 0.1), std::invalid_argument);
}

TEST(CnRemoteProtocol, EveryPulseIsResonantOnTheControlBranchAndInsideItsSpinBand) {
  for (std::size_t L = 3; L <= 40; ++L) {
    const auto p = chain(L);
    const auto seq = cn_remote_protocol(p, 0.1);
    ASSERT_EQ(seq.size(), 2 * L - 3);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& tr = seq.transitions[i];
      const double gap = std::abs(energy(tr.to, p) - energy(tr.from, p));
      ASSERT_NEAR(gap, seq.pulses[i].nu, 1e-9);
      std::size_t hits = 0;
      std::size_t hit = L;
      for (std::size_t k = 0; k < L; ++k) {
        if (std::abs(seq.pulses[i].nu - larmor_frequency(k, p)) <= 2.0 * p.J) {
          ++hits;
          hit = k;
        }
      }
      ASSERT_EQ(hits, 1u);
      ASSERT_EQ(hit, tr.flip_qubit);
    }
  }
}

// Oracle: energy() differences on the all-zeros branch minus the protocol carrier.
std::vector<double> detunings_by_energy(const ChainParams& p, const PulseSequence& seq) {
  std::vector<double> out;
  const BasisState ground(p.L);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto k = seq.transitions[i].flip_qubit;
    out.push_back(std::abs(std::abs(energy(ground.flipped(k), p) - energy(ground, p)) - seq.pulses[i].nu));
  }
  return out;
}

TEST(GroundBranchDetunings, FrozenValues) {
  const auto p5 = chain(5);
  const auto seq5 = cn_remote_protocol(p5, 0.0906);
  const auto d5 = ground_branch_detunings(seq5, p5);
  const std::vector<double> expected5{2, 2, 4, 2, 2, 2, 2};
  ASSERT_EQ(d5.size(), expected5.size());
  for (std::size_t i = 0; i < d5.size(); ++i) EXPECT_NEAR(d5[i], expected5[i], 1e-12);
  const auto oracle = detunings_by_energy(p5, seq5);
  for (std::size_t i = 0; i < d5.size(); ++i) EXPECT_NEAR(d5[i], oracle[i], 1e-9);

  const auto p3 = chain(3);
  const auto d3 = ground_branch_detunings(cn_remote_protocol(p3, 0.1), p3);
  EXPECT_NEAR(d3[0], 2.0, 1e-12);
  EXPECT_NEAR(d3[1], 2.0, 1e-12);
  EXPECT_NEAR(d3[2], 4.0, 1e-12);
}

TEST(GroundBranchDetunings, ThirdPulseIsTwiceTheGenericDetuningForAllLengths) {
  for (std::size_t L = 3; L <= 60; ++L) {
    const auto p = chain(L);
    const auto d = ground_branch_detunings(cn_remote_protocol(p, 0.2), p);
    for (std::size_t i = 0; i < d.size(); ++i) {
      ASSERT_DOUBLE_EQ(d[i], i == 2 ? 4.0 * p.J : 2.0 * p.J) << "L=" << L << " pulse " << i + 1;
    }
    EXPECT_EQ(d[2] / d[0], 2.0);
  }
  PulseSequence bare;
  bare.pulses.push_back(Pulse::pi_pulse(100.0, 0.1));
  EXPECT_THROW(ground_branch_detunings(bare, chain(3)), std::invalid_argument);
}

TEST(ProtocolCsv, HeaderAndRows) {
  const auto seq = cn_remote_protocol(chain(4), 0.5);
  std::ostringstream out;
  write_protocol_csv(out, seq);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,nu,Omega,tau,phase,flip_qubit,from_state,to_state");
  std::getline(in, line);
  EXPECT_EQ(line, "1,140,0.5,6.2831853071795862,0,2,1000,1100");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5u);
}

}  // namespace
}  // namespace spinchain
