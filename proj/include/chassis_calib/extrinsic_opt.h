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

#ifndef CHASSIS_CALIB_EXTRINSIC_OPT_H_
#define CHASSIS_CALIB_EXTRINSIC_OPT_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "chassis_calib/pca_calib.h"
#include "chassis_calib/trajectory.h"

namespace chassis_calib {

using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Matrix25d = Eigen::Matrix<double, 2, 5>;

// Optimisation vector, ordered (p_x, p_y, theta, q_x, q_y). q are the inverse
// chassis scale factors 1/s_x, 1/s_y.
struct ExtrinsicParams {
  Eigen::Vector2d p_F_O = Eigen::Vector2d::Zero();  // m
  double theta_F_O = 0.0;                            // rad
  double q_x = 1.0;
  double q_y = 1.0;

  Vector5d ToVector() const;
  static ExtrinsicParams FromVector(const Vector5d& v);

  // q_x, q_y must lie in (0.5, 2.0).
  void Validate() const;
};

// One inter-frame observation: VIO displacement expressed in F_i, wheel
// odometry displacement expressed in O_i, and the odometry yaw change.
struct RelativePosePair {
  Eigen::Vector2d dp_F = Eigen::Vector2d::Zero();
  Eigen::Vector2d dp_O = Eigen::Vector2d::Zero();
  double dtheta = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
};

enum class LossKind { kNone, kHuber };

struct SolverConfig {
  LossKind loss = LossKind::kHuber;
  double huber_delta = 0.05;  // m
  int max_iterations = 100;
  double gradient_tol = 1e-12;
  double step_tol = 1e-12;
  ExtrinsicParams x0;

  void Validate() const;
};

struct SolveReport {
  ExtrinsicParams x_star;
  double final_cost = 0.0;  // sum of rho(|r|^2), m^2
  int iterations = 0;
  bool converged = false;
  double residual_rms = 0.0;  // m
  Matrix5d covariance_estimate = Matrix5d::Zero();
  std::vector<double> cost_history;  // cost after each accepted step, x0 first
};

inline constexpr double kDefaultPairInterval = 0.5;  // s
inline constexpr std::size_t kMinPairs = 20;
inline constexpr double kMinExcitation = 0.05;  // rad

// Re-expresses IMU poses as fake-body F poses (B with pitch/roll removed and
// dropped by p_Bz onto the chassis plane) and keeps x, y, yaw.
std::vector<TimedPose2> VioPathToF(std::span<const TimedPose3> body_poses,
                                   const TiltResult& tilt, double p_Bz_O);

// Samples both paths on a shared grid of the given interval and forms
// consecutive relative displacements, each in the frame of the interval start.
std::vector<RelativePosePair> BuildPosePairs(std::span<const TimedPose2> path_F,
                                             std::span<const TimedPose2> path_O,
                                             double interval);

// r = p + R(theta) dp_F - R(dtheta) p - diag(q) dp_O
Eigen::Vector2d Residual(const ExtrinsicParams& x, const RelativePosePair& pair);

// d r / d (p_x, p_y, theta, q_x, q_y)
Matrix25d Jacobian(const ExtrinsicParams& x, const RelativePosePair& pair);

double Loss(double squared_norm, const SolverConfig& cfg);

// Levenberg-Marquardt over all pairs.
SolveReport Solve(std::span<const RelativePosePair> pairs, const SolverConfig& cfg);

}  // namespace chassis_calib

#endif  // CHASSIS_CALIB_EXTRINSIC_OPT_H_
