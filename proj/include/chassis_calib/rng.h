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

#ifndef CHASSIS_CALIB_RNG_H_
#define CHASSIS_CALIB_RNG_H_

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace chassis_calib {

// Explicit random state threaded through every stochastic operation so that
// independent streams never share a generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Normal() { return normal_(engine_); }

  Eigen::Vector3d Normal3() {
    const double x = Normal();
    const double y = Normal();
    const double z = Normal();
    return {x, y, z};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_RNG_H_
