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

#ifndef CHASSIS_CALIB_ALLAN_H_
#define CHASSIS_CALIB_ALLAN_H_

#include <cstddef>
#include <span>
#include <vector>

namespace chassis_calib {

struct AllanPoint {
  double tau = 0.0;             // cluster time, s
  double adev = 0.0;            // signal units
  std::size_t n_clusters = 0;   // floor(N / m)
};

struct AllanFit {
  double white_noise_density = 0.0;  // units/sqrt(Hz), read at tau = 1 s
  double bias_instability = 0.0;     // units, min(adev) / 0.664
  double tau_at_minimum = 0.0;       // s
};

inline constexpr std::size_t kMinClusters = 9;
inline constexpr double kBiasInstabilityFactor = 0.664;

// Log-spaced cluster times, 10 per decade, from 2/rate to N/(10 rate),
// snapped to integer sample counts.
std::vector<double> DefaultTauGrid(std::size_t n_samples, double sample_rate);

// Throws kNonUniformSampling when any step deviates more than 1% from 1/rate.
void CheckUniformSampling(std::span<const double> timestamps, double sample_rate);

// Overlapping Allan deviation of a uniformly sampled stream. Taus must be
// ascending integer multiples of 1/rate and leave at least kMinClusters
// clusters each (kInsufficientData otherwise).
std::vector<AllanPoint> AllanDeviation(std::span<const double> samples, double sample_rate,
                                       std::span<const double> taus);

// Reads white noise off the tau^(-1/2) region and bias instability off the
// curve minimum. Needs >= 3 decades of tau.
AllanFit FitNoiseParams(std::span<const AllanPoint> curve);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_ALLAN_H_
