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

namespace rshadow {

struct Interval {
  double low = 0.0;
  double high = 0.0;

  double center() const { return 0.5 * (low + high); }
  double width() const { return high - low; }
  bool contains(double x) const { return low <= x && x <= high; }
};

/// Inverse CDF of the standard normal distribution.
double normal_quantile(double p);

/// center ± z_{(1+level)/2} · sd.
Interval normal_interval(double center, double sd, double level = 0.95);

}  // namespace rshadow
