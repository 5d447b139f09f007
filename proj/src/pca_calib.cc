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

#include "chassis_calib/pca_calib.h"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "chassis_calib/error.h"
#include "chassis_calib/simd/kernels.h"

namespace chassis_calib {

namespace {

constexpr double kMinTopEigenvalue = 1e-12;
constexpr double kTieTol = 1e-9;
constexpr double kSignTol = 1e-3;
constexpr double kAntiparallelTol = 1e-9;

}  // namespace

void TiltConfig::Validate() const {
  if (!(min_rate >= 0.0)) throw CalibError(ErrorCode::kInvalidInput, "min_rate must be >= 0");
  if (!(still_duration >= 0.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "still_duration must be >= 0");
  }
}

Eigen::MatrixX3d BuildDataset(std::span<const Eigen::Vector3d> gyro, const TiltConfig& cfg) {
  cfg.Validate();
  std::vector<Eigen::Index> admitted;
  admitted.reserve(gyro.size());
  for (std::size_t i = 0; i < gyro.size(); ++i) {
    if (gyro[i].norm() >= cfg.min_rate) admitted.push_back(static_cast<Eigen::Index>(i));
  }
  if (admitted.size() < kMinTiltSamples) {
    std::ostringstream os;
    os << admitted.size() << " samples above " << cfg.min_rate << " rad/s, need "
       << kMinTiltSamples;
    throw CalibError(ErrorCode::kInsufficientRotation, os.str());
  }
  const auto k = static_cast<Eigen::Index>(admitted.size());
  Eigen::MatrixX3d X(2 * k, 3);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Vector3d& w = gyro[static_cast<std::size_t>(admitted[i])];
    X.row(2 * i) = w.transpose();
    X.row(2 * i + 1) = -w.transpose();
  }
  return X;
}

PrincipalAxis PrincipalAxisOf(const Eigen::MatrixX3d& X) {
  if (X.rows() < 6) {
    throw CalibError(ErrorCode::kInsufficientData, "PCA needs at least 6 rows");
  }
  const std::size_t n = static_cast<std::size_t>(X.rows());
  const auto g = simd::Gram3Sum({X.col(0).data(), n}, {X.col(1).data(), n},
                                {X.col(2).data(), n});
  const double k = static_cast<double>(X.rows()) / 2.0;
  Eigen::Matrix3d cov;
  cov << g.xx, g.xy, g.xz, g.xy, g.yy, g.yz, g.xz, g.yz, g.zz;
  cov /= (k - 1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  if (es.info() != Eigen::Success) {
    throw CalibError(ErrorCode::kDegenerateCovariance, "eigen-decomposition failed");
  }
  // Eigen returns ascending order.
  PrincipalAxis out;
  out.eigenvalues = es.eigenvalues().reverse().cwiseMax(0.0);
  const double l1 = out.eigenvalues[0];
  const double l2 = out.eigenvalues[1];
  if (l1 < kMinTopEigenvalue) {
    throw CalibError(ErrorCode::kDegenerateCovariance, "no rotation energy in the data");
  }
  if (l1 - l2 < kTieTol * l1) {
    throw CalibError(ErrorCode::kDegenerateCovariance,
                     "largest eigenvalue is not separated from the second");
  }
  Eigen::Vector3d v = es.eigenvectors().col(2).normalized();
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
  out.v_max = v;
  return out;
}

Eigen::Vector3d DisambiguateSign(const Eigen::Vector3d& v, const Rot3& prior) {
  const double d = (prior * v).z();
  if (std::abs(d) < kSignTol) {
    throw CalibError(ErrorCode::kAmbiguousSign,
                     "rotation axis is nearly horizontal under the prior mounting");
  }
  return d > 0.0 ? v : Eigen::Vector3d(-v);
}

Rot3 AlignToZ(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  const Eigen::Vector3d c = u.cross(Eigen::Vector3d::UnitZ());
  const double d = u.z();
  if (d < -1.0 + kAntiparallelTol) {
    throw CalibError(ErrorCode::kAntiparallelAxis, "axis points along -z");
  }
  const double s = c.norm();
  if (s == 0.0) return Rot3::Identity();
  return RotFromAxisAngle({c / s * std::atan2(s, d)});
}

PitchRoll TiltFromAxis(const Eigen::Vector3d& v) {
  const EulerYPR e = YprFromRot(AlignToZ(v));
  return {e.pitch, e.roll};
}

Eigen::Vector3d EstimateStillBias(std::span<const ImuSample> samples, double still_duration) {
  if (samples.empty() || still_duration <= 0.0) return Eigen::Vector3d::Zero();
  const double t_end = samples.front().t + still_duration;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  std::size_t n = 0;
  for (const auto& s : samples) {
    if (s.t >= t_end) break;
    sum += s.gyro;
    ++n;
  }
  return n == 0 ? Eigen::Vector3d::Zero() : Eigen::Vector3d(sum / static_cast<double>(n));
}

TiltResult CalibrateTilt(std::span<const ImuSample> samples, const TiltConfig& cfg) {
  cfg.Validate();
  const Eigen::Vector3d bias = EstimateStillBias(samples, cfg.still_duration);
  std::vector<Eigen::Vector3d> gyro;
  gyro.reserve(samples.size());
  for (const auto& s : samples) gyro.push_back(s.gyro - bias);

  const Eigen::MatrixX3d X = BuildDataset(gyro, cfg);
  const PrincipalAxis axis = PrincipalAxisOf(X);
  const Eigen::Vector3d v = DisambiguateSign(axis.v_max, cfg.prior_R_B_O);
  const PitchRoll pr = TiltFromAxis(v);

  TiltResult out;
  out.pitch = pr.pitch;
  out.roll = pr.roll;
  out.v_max = v;
  out.eigenvalues = axis.eigenvalues;
  out.n_samples = static_cast<std::size_t>(X.rows() / 2);
  return out;
}

}  // namespace chassis_calib
