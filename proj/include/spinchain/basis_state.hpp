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
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinchain {

/// Computational basis state of a chain of up to kMaxQubits spins.
///
/// Bit k holds qubit k: 0 is spin up (aligned with the field), 1 is spin down.
/// Text form is |b_{L-1} ... b_1 b_0>, i.e. qubit 0 is the rightmost character.
class BasisState {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kMaxQubits = kWords * kWordBits;

  constexpr BasisState() = default;

  /// All-zeros state on `num_qubits` spins.
  explicit constexpr BasisState(std::size_t num_qubits) : size_(static_cast<std::uint16_t>(num_qubits)) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("BasisState: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
  }

  /// Low 64 qubits taken from `low_bits`; bits at or above num_qubits must be zero.
  static BasisState from_bits(std::size_t num_qubits, std::uint64_t low_bits) {
    BasisState s(num_qubits);
    if (num_qubits < kWordBits && (low_bits >> num_qubits) != 0) {
      throw std::invalid_argument("BasisState: bit pattern wider than the chain");
    }
    s.words_[0] = low_bits;
    return s;
  }

  /// Parses "b_{L-1}...b_0", optionally wrapped as "|...>".
  static BasisState parse(std::string_view text) {
    if (text.size() >= 2 && text.front() == '|' && text.back() == '>') {
      text = text.substr(1, text.size() - 2);
    }
    if (text.empty() || text.size() > kMaxQubits) {
      throw std::invalid_argument("BasisState: bad length in '" + std::string(text) + "'");
    }
    BasisState s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[text.size() - 1 - i];
      if (c == '1') {
        s.set(i, true);
      } else if (c != '0') {
        throw std::invalid_argument("BasisState: non-binary character in '" + std::string(text) + "'");
      }
    }
    return s;
  }

  constexpr std::size_t size() const noexcept { return size_; }

  constexpr bool operator[](std::size_t k) const noexcept {
    return ((words_[k / kWordBits] >> (k % kWordBits)) & 1u) != 0;
  }

  bool at(std::size_t k) const {
    check_index(k);
    return (*this)[k];
  }

  void set(std::size_t k, bool value) {
    check_index(k);
    const std::uint64_t mask = std::uint64_t{1} << (k % kWordBits);
    if (value) {
      words_[k / kWordBits] |= mask;
    } else {
      words_[k / kWordBits] &= ~mask;
    }
  }

  /// Copy with qubit k inverted.
  BasisState flipped(std::size_t k) const {
    check_index(k);
    BasisState out = *this;
    out.words_[k / kWordBits] ^= std::uint64_t{1} << (k % kWordBits);
    return out;
  }

  std::size_t popcount() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool is_zero() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// Low 64 bits; the dense engines index amplitudes with this.
  std::uint64_t low_word() const noexcept { return words_[0]; }

  std::string to_string() const {
    std::string out(size_, '0');
    for (std::size_t k = 0; k < size_; ++k) {
      if ((*this)[k]) out[size_ - 1 - k] = '1';
    }
    return out;
  }

  std::string to_ket() const { return "|" + to_string() + ">"; }

  std::size_t hash() const noexcept {
    std::size_t h = size_;
    for (auto w : words_) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  friend constexpr bool operator==(const BasisState&, const BasisState&) = default;

  /// Orders by length, then as an unsigned integer (qubit L-1 most significant).
  friend constexpr std::strong_ordering operator<=>(const BasisState& a, const BasisState& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t i = kWords; i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_index(std::size_t k) const {
    if (k >= size_) {
      throw std::out_of_range("BasisState: qubit index " + std::to_string(k) + " outside chain of " +
                              std::to_string(size_));
    }
  }

  std::array<std::uint64_t, kWords> words_{};
  std::uint16_t size_ = 0;
};

struct BasisStateHash {
  std::size_t operator()(const BasisState& s) const noexcept { return s.hash(); }
};

}  // namespace spinchain
