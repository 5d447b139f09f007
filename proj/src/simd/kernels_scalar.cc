// Copyright 2026 The chassis_calib Authors
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

#include "chassis_calib/simd/kernels.h"

// Reference implementations. Every vector variant is tested against these.

namespace chassis_calib::simd::scalar {

double SecondDiffSumSq(std::span<const double> theta, std::size_t m) {
  if (theta.size() <= 2 * m) return 0.0;
  const std::size_t n = theta.size() - 2 * m;
  const double* a = theta.data();
  const double* b = a + m;
  const double* c = a + 2 * m;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = c[k] - 2.0 * b[k] + a[k];
    sum += d * d;
  }
  return sum;
}

Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z) {
  Gram3 g;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    g.xx += x[i] * x[i];
    g.xy += x[i] * y[i];
    g.xz += x[i] * z[i];
    g.yy += y[i] * y[i];
    g.yz += y[i] * z[i];
    g.zz += z[i] * z[i];
  }
  return g;
}

}  // namespace chassis_calib::simd::scalar
