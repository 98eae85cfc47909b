// Copyright 2026 The rshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace rshadow {

/// Largest register the dense simulator and the record formats accept.
inline constexpr int kMaxQubits = 14;

/// Fixed-width classical bitstring.
///
/// Qubit 0 is the most significant bit of `value()`, so `value()` is also the
/// computational-basis index of the corresponding state. The text form lists
/// qubit 0 first: "10" has qubit 0 set and value 2.
class Bitstring {
 public:
  Bitstring() = default;
  Bitstring(int width, std::uint32_t value);

  static Bitstring zeros(int width) { return Bitstring(width, 0); }
  /// Parses "0101"-style text. Throws std::invalid_argument on bad input.
  static Bitstring parse(std::string_view text);

  int width() const { return width_; }
  std::uint32_t value() const { return value_; }

  int bit(int qubit) const { return static_cast<int>((value_ >> shift(qubit)) & 1u); }
  void set(int qubit, int v);
  void flip(int qubit) { value_ ^= 1u << shift(qubit); }
  int popcount() const;

  /// Bits of the listed qubits, in list order (first listed = new qubit 0).
  Bitstring project(std::span<const int> subset) const;

  std::string to_string() const;

  friend Bitstring operator^(const Bitstring& a, const Bitstring& b);
  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  int shift(int qubit) const { return width_ - 1 - qubit; }

  int width_ = 0;
  std::uint32_t value_ = 0;
};

}  // namespace rshadow
