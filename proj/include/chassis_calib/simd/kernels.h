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

#ifndef CHASSIS_CALIB_SIMD_KERNELS_H_
#define CHASSIS_CALIB_SIMD_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace chassis_calib::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

// True if the variant was compiled in and the running CPU supports it.
bool IsaAvailable(Isa isa);

// Variant used by the dispatched entry points. Picked once at first use:
// the best available variant unless CHASSIS_CALIB_SIMD=scalar|avx2|neon
// names another available one.
Isa ActiveIsa();

// Test hook. Throws std::invalid_argument if the variant is unavailable.
void ForceIsa(Isa isa);

struct Gram3 {
  double xx = 0.0, xy = 0.0, xz = 0.0;
  double yy = 0.0, yz = 0.0, zz = 0.0;
};

// Sum over k of (theta[k + 2m] - 2 theta[k + m] + theta[k])^2,
// k = 0 .. theta.size() - 2m - 1. Zero when theta.size() <= 2m.
double SecondDiffSumSq(std::span<const double> theta, std::size_t m);

// Unique entries of [x y z]^T [x y z] for three equally sized columns.
Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z);

namespace scalar {
double SecondDiffSumSq(std::span<const double> theta, std::size_t m);
Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z);
}  // namespace scalar

namespace avx2 {
double SecondDiffSumSq(std::span<const double> theta, std::size_t m);
Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z);
}  // namespace avx2

namespace neon {
double SecondDiffSumSq(std::span<const double> theta, std::size_t m);
Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z);
}  // namespace neon

}  // namespace chassis_calib::simd

#endif  // CHASSIS_CALIB_SIMD_KERNELS_H_
