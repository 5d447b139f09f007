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

#ifndef CHASSIS_CALIB_TRAJECTORY_H_
#define CHASSIS_CALIB_TRAJECTORY_H_

#include "chassis_calib/geometry.h"

namespace chassis_calib {

struct TimedPose2 {
  double t = 0.0;
  Pose2 pose;
};

struct TimedPose3 {
  double t = 0.0;
  Pose3 pose;
};

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_TRAJECTORY_H_
