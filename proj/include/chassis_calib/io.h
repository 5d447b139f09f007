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

#ifndef CHASSIS_CALIB_IO_H_
#define CHASSIS_CALIB_IO_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chassis_calib/imu_model.h"
#include "chassis_calib/trajectory.h"

namespace chassis_calib {

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

std::string ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::string& path, const std::string& content);

// IMU CSV: header "t,gx,gy,gz,ax,ay,az", SI units. Parse failures raise
// kParseError naming the offending line.
std::vector<ImuSample> ParseImuCsv(std::istream& in, const std::string& source = "<stream>");
void FormatImuCsv(std::ostream& out, std::span<const ImuSample> samples);
std::vector<ImuSample> ReadImuCsv(const std::string& path);
void WriteImuCsv(const std::string& path, std::span<const ImuSample> samples);

// TUM trajectory: "t x y z qx qy qz qw" per line, '#' comments allowed.
std::vector<TimedPose3> ParseTum(std::istream& in, const std::string& source = "<stream>");
void FormatTum(std::ostream& out, std::span<const TimedPose3> poses);
std::vector<TimedPose3> ReadTum(const std::string& path);
void WriteTum(const std::string& path, std::span<const TimedPose3> poses);

// Planar embedding (z = 0, rotation about z) and its projection.
Pose3 LiftPose2(const Pose2& p);
Pose2 ProjectPose3(const Pose3& p);
std::vector<TimedPose3> LiftPath(std::span<const TimedPose2> path);
std::vector<TimedPose2> ProjectPath(std::span<const TimedPose3> path);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_IO_H_
