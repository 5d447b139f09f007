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

#include <arm_neon.h>

#include "chassis_calib/simd/kernels.h"

namespace chassis_calib::simd::neon {

double SecondDiffSumSq(std::span<const double> theta, std::size_t m) {
  if (theta.size() <= 2 * m) return 0.0;
  const std::size_t n = theta.size() - 2 * m;
  const double* a = theta.data();
  const double* b = a + m;
  const double* c = a + 2 * m;

  const float64x2_t two = vdupq_n_f64(2.0);
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    float64x2_t d0 = vaddq_f64(vld1q_f64(c + k), vld1q_f64(a + k));
    float64x2_t d1 = vaddq_f64(vld1q_f64(c + k + 2), vld1q_f64(a + k + 2));
    d0 = vfmsq_f64(d0, vld1q_f64(b + k), two);
    d1 = vfmsq_f64(d1, vld1q_f64(b + k + 2), two);
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) {
    const double d = c[k] - 2.0 * b[k] + a[k];
    sum += d * d;
  }
  return sum;
}

Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z) {
  const std::size_t n = x.size();
  float64x2_t xx = vdupq_n_f64(0.0), xy = vdupq_n_f64(0.0), xz = vdupq_n_f64(0.0);
  float64x2_t yy = vdupq_n_f64(0.0), yz = vdupq_n_f64(0.0), zz = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x.data() + i);
    const float64x2_t vy = vld1q_f64(y.data() + i);
    const float64x2_t vz = vld1q_f64(z.data() + i);
    xx = vfmaq_f64(xx, vx, vx);
    xy = vfmaq_f64(xy, vx, vy);
    xz = vfmaq_f64(xz, vx, vz);
    yy = vfmaq_f64(yy, vy, vy);
    yz = vfmaq_f64(yz, vy, vz);
    zz = vfmaq_f64(zz, vz, vz);
  }
  Gram3 g{vaddvq_f64(xx), vaddvq_f64(xy), vaddvq_f64(xz),
          vaddvq_f64(yy), vaddvq_f64(yz), vaddvq_f64(zz)};
  for (; i < n; ++i) {
    g.xx += x[i] * x[i];
    g.xy += x[i] * y[i];
    g.xz += x[i] * z[i];
    g.yy += y[i] * y[i];
    g.yz += y[i] * z[i];
    g.zz += z[i] * z[i];
  }
  return g;
}

}  // namespace chassis_calib::simd::neon
