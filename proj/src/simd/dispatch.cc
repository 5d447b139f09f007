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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "chassis_calib/simd/kernels.h"

namespace chassis_calib::simd {

namespace {

Isa BestIsa() {
  if (IsaAvailable(Isa::kAvx2)) return Isa::kAvx2;
  if (IsaAvailable(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

Isa InitialIsa() {
  if (const char* env = std::getenv("CHASSIS_CALIB_SIMD")) {
    const std::string name(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == IsaName(isa) && IsaAvailable(isa)) return isa;
    }
  }
  return BestIsa();
}

std::atomic<Isa>& ActiveSlot() {
  static std::atomic<Isa> slot{InitialIsa()};
  return slot;
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(CHASSIS_CALIB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(CHASSIS_CALIB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa ActiveIsa() { return ActiveSlot().load(std::memory_order_relaxed); }

void ForceIsa(Isa isa) {
  if (!IsaAvailable(isa)) {
    throw std::invalid_argument("SIMD variant not available: " + std::string(IsaName(isa)));
  }
  ActiveSlot().store(isa, std::memory_order_relaxed);
}

double SecondDiffSumSq(std::span<const double> theta, std::size_t m) {
  switch (ActiveIsa()) {
#if defined(CHASSIS_CALIB_HAVE_AVX2)
    case Isa::kAvx2: return avx2::SecondDiffSumSq(theta, m);
#endif
#if defined(CHASSIS_CALIB_HAVE_NEON)
    case Isa::kNeon: return neon::SecondDiffSumSq(theta, m);
#endif
    default: return scalar::SecondDiffSumSq(theta, m);
  }
}

Gram3 Gram3Sum(std::span<const double> x, std::span<const double> y,
               std::span<const double> z) {
  if (y.size() != x.size() || z.size() != x.size()) {
    throw std::invalid_argument("Gram3Sum: column length mismatch");
  }
  switch (ActiveIsa()) {
#if defined(CHASSIS_CALIB_HAVE_AVX2)
    case Isa::kAvx2: return avx2::Gram3Sum(x, y, z);
#endif
#if defined(CHASSIS_CALIB_HAVE_NEON)
    case Isa::kNeon: return neon::Gram3Sum(x, y, z);
#endif
    default: return scalar::Gram3Sum(x, y, z);
  }
}

}  // namespace chassis_calib::simd
