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
#include "rshadow/random.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

namespace rshadow {
namespace {

// Known-answer vectors for Philox4x32-10 published with Random123.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const std::uint32_t m = 0xffffffffu;
  const auto out = philox4x32({m, m, m, m}, {m, m});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RandomStream, DifferentStreamsDiffer) {
  RandomStream a(42, 0), b(42, 1);
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += a() == b();
  EXPECT_EQ(equal, 0);
}

TEST(RandomStream, SplitIsDeterministicAndIndependentOfPosition) {
  RandomStream root(7);
  const RandomStream child_before = root.split(3);
  for (int i = 0; i < 10; ++i) root();
  RandomStream c1 = child_before;
  RandomStream c2 = root.split(3);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(c1(), c2());
  RandomStream c3 = root.split(4);
  RandomStream c4 = root.split(3);
  EXPECT_NE(c3(), c4());
}

TEST(RandomStream, UniformInUnitInterval) {
  RandomStream rng(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
}

TEST(RandomStream, NormalMoments) {
  RandomStream rng(2);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(RandomStream, BelowIsUniformAndInRange) {
  RandomStream rng(3);
  std::vector<int> counts(3, 0);
  const int n = 90000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.below(3);
    ASSERT_LT(k, 3u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 3.0, 5 * std::sqrt(n * (1.0 / 3) * (2.0 / 3)));
  EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(RandomStream, PositionCountsHalfBlocks) {
  RandomStream rng(5);
  EXPECT_EQ(rng.position(), 0u);
  rng();
  EXPECT_EQ(rng.position(), 3u);  // one block drawn, spare pending
  rng();
  EXPECT_EQ(rng.position(), 2u);
}

TEST(DiscreteSampler, MatchesWeights) {
  const std::vector<double> w = {0.1, 0.0, 0.6, 0.3};
  DiscreteSampler sampler(w);
  RandomStream rng(11);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[sampler(rng)];
  EXPECT_EQ(counts[1], 0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    EXPECT_NEAR(counts[k] / double(n), w[k], 5 * std::sqrt(w[k] * (1 - w[k]) / n) + 1e-12);
  }
}

TEST(DiscreteSampler, RejectsBadWeights) {
  EXPECT_THROW(DiscreteSampler(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(DiscreteSampler(std::vector<double>{0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteSampler(std::vector<double>{1.0, -0.1}), std::invalid_argument);
}

}  // namespace
}  // namespace rshadow
