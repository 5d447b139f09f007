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

// Built with -mavx2 -mfma; only reached through the runtime dispatcher after
// a CPUID check.

#include <immintrin.h>

#include "chassis_calib/simd/kernels.h"

namespace chassis_calib::simd::avx2 {

namespace {

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double SecondDiffSumSq(std::span<const double> theta, std::size_t m) {
  if (theta.size() <= 2 * m) return 0.0;
  const std::size_t n = theta.size() - 2 * m;
  const double* a = theta.data();
  const double* b = a + m;
  const double* c = a + 2 * m;

  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256d d0 = _mm256_add_pd(_mm256_loadu_pd(c + k), _mm256_loadu_pd(a + k));
    __m256d d1 = _mm256_add_pd(_mm256_loadu_pd(c + k + 4), _mm256_loadu_pd(a + k + 4));
    d0 = _mm256_fnmadd_pd(two, _mm256_loadu_pd(b + k), d0);
    d1 = _mm256_fnmadd_pd(two, _mm256_loadu_pd(b + k + 4), d1);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_add_pd(_mm256_loadu_pd(c + k), _mm256_loadu_pd(a + k));
    d = _mm256_fnmadd_pd(two, _mm256_loadu_pd(b + k), d);
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) {
    const double d = c[k] - 2.0 * b[k] + a[k];
    sum += d * d;
  }
  return sum;
}

Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z) {
  const std::size_t n = x.size();
  __m256d xx = _mm256_setzero_pd(), xy = _mm256_setzero_pd(), xz = _mm256_setzero_pd();
  __m256d yy = _mm256_setzero_pd(), yz = _mm256_setzero_pd(), zz = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x.data() + i);
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    const __m256d vz = _mm256_loadu_pd(z.data() + i);
    xx = _mm256_fmadd_pd(vx, vx, xx);
    xy = _mm256_fmadd_pd(vx, vy, xy);
    xz = _mm256_fmadd_pd(vx, vz, xz);
    yy = _mm256_fmadd_pd(vy, vy, yy);
    yz = _mm256_fmadd_pd(vy, vz, yz);
    zz = _mm256_fmadd_pd(vz, vz, zz);
  }
  Gram3 g{HorizontalSum(xx), HorizontalSum(xy), HorizontalSum(xz),
          HorizontalSum(yy), HorizontalSum(yz), HorizontalSum(zz)};
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

}  // namespace chassis_calib::simd::avx2
