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

#include "rshadow/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace rshadow {

Bitstring::Bitstring(int width, std::uint32_t value) : width_(width), value_(value) {
  if (width < 0 || width > 32) throw std::invalid_argument("Bitstring: width out of range");
  if (width < 32 && (value >> width) != 0) {
    throw std::invalid_argument("Bitstring: value has bits beyond width");
  }
}

Bitstring Bitstring::parse(std::string_view text) {
  if (text.size() > 32) throw std::invalid_argument("Bitstring: too many bits");
  std::uint32_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("Bitstring: invalid character '" + std::string(1, c) + "'");
    }
    value = (value << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return Bitstring(static_cast<int>(text.size()), value);
}

void Bitstring::set(int qubit, int v) {
  const std::uint32_t mask = 1u << shift(qubit);
  value_ = v ? (value_ | mask) : (value_ & ~mask);
}

int Bitstring::popcount() const { return std::popcount(value_); }

Bitstring Bitstring::project(std::span<const int> subset) const {
  std::uint32_t out = 0;
  for (int q : subset) {
    if (q < 0 || q >= width_) throw std::out_of_range("Bitstring::project: qubit out of range");
    out = (out << 1) | static_cast<std::uint32_t>(bit(q));
  }
  return Bitstring(static_cast<int>(subset.size()), out);
}

std::string Bitstring::to_string() const {
  std::string s(static_cast<std::size_t>(width_), '0');
  for (int q = 0; q < width_; ++q) s[static_cast<std::size_t>(q)] = bit(q) ? '1' : '0';
  return s;
}

Bitstring operator^(const Bitstring& a, const Bitstring& b) {
  if (a.width_ != b.width_) throw std::invalid_argument("Bitstring: width mismatch in xor");
  return Bitstring(a.width_, a.value_ ^ b.value_);
}

}  // namespace rshadow
