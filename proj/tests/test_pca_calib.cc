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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "chassis_calib/error.h"

namespace chassis_calib {
namespace {

// Cyclic Jacobi eigensolver for symmetric 3x3 matrices. Returns eigenvalues
// descending with matching eigenvector columns.
void JacobiEigen(Eigen::Matrix3d a, Eigen::Vector3d& values, Eigen::Matrix3d& vectors) {
  Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        Eigen::Matrix3d j = Eigen::Matrix3d::Identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = j.transpose() * a * j;
        v = v * j;
      }
    }
  }
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int k) { return a(i, i) > a(k, k); });
  for (int i = 0; i < 3; ++i) {
    values[i] = a(idx[i], idx[i]);
    vectors.col(i) = v.col(idx[i]);
  }
}

std::vector<Eigen::Vector3d> AxisSamples(const Eigen::Vector3d& axis, double jitter, int n,
                                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < n; ++i) {
    const double rate = (i % 2 ? 1.0 : -0.6) * (0.5 + 0.01 * (i % 37));
    out.push_back(rate * axis + jitter * rng.Normal3());
  }
  return out;
}

TEST(BuildDataset, SymmetrisedRows) {
  std::vector<Eigen::Vector3d> g(150, Eigen::Vector3d(0, 0, 1));
  const Eigen::MatrixX3d X = BuildDataset(g, TiltConfig{});
  ASSERT_EQ(X.rows(), 300);
  EXPECT_EQ(X.row(0), Eigen::RowVector3d(0, 0, 1));
  EXPECT_EQ(X.row(1), Eigen::RowVector3d(0, 0, -1));
  EXPECT_EQ(X.colwise().sum(), Eigen::RowVector3d::Zero());
}

TEST(BuildDataset, ThresholdDropsSlowSamples) {
  std::vector<Eigen::Vector3d> g(120, Eigen::Vector3d(0.5, 0, 0));
  g.push_back({0.1, 0, 0});
  TiltConfig cfg;
  cfg.min_rate = 0.3;
  EXPECT_EQ(BuildDataset(g, cfg).rows(), 240);
}

TEST(BuildDataset, TooFewAdmittedSamples) {
  std::vector<Eigen::Vector3d> g(99, Eigen::Vector3d(1, 0, 0));
  g.resize(500, Eigen::Vector3d(0.01, 0, 0));
  try {
    BuildDataset(g, TiltConfig{});
    FAIL();
  } catch (const CalibError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientRotation);
  }
}

TEST(PrincipalAxis, RankOne) {
  std::vector<Eigen::Vector3d> g(200, Eigen::Vector3d(0, 0, 2));
  const PrincipalAxis pa = PrincipalAxisOf(BuildDataset(g, TiltConfig{}));
  EXPECT_NEAR(std::abs(pa.v_max.z()), 1.0, 1e-15);
  // X^T X = 2K * 4 on zz, divided by K - 1.
  EXPECT_NEAR(pa.eigenvalues[0], 4.0 * 400 / 199.0, 1e-12);
  EXPECT_NEAR(pa.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(pa.eigenvalues[2], 0.0, 1e-12);
}

TEST(PrincipalAxis, MatchesJacobiOracle) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Vector3d axis = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
    const auto g = AxisSamples(axis, 0.2, 400, trial);
    const Eigen::MatrixX3d X = BuildDataset(g, TiltConfig{});
    const PrincipalAxis pa = PrincipalAxisOf(X);

    const double k = X.rows() / 2.0;
    const Eigen::Matrix3d cov = X.transpose() * X / (k - 1.0);
    Eigen::Vector3d values;
    Eigen::Matrix3d vectors;
    JacobiEigen(cov, values, vectors);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(pa.eigenvalues[i], values[i], 1e-10 * values[0]);
    EXPECT_NEAR(std::abs(pa.v_max.dot(vectors.col(0))), 1.0, 1e-10);
    EXPECT_NEAR(pa.v_max.norm(), 1.0, 1e-12);
  }
}

TEST(PrincipalAxis, SmallJitterStaysOnAxis) {
  const auto g = AxisSamples(Eigen::Vector3d::UnitZ(), 1e-3, 2000, 3);
  const PrincipalAxis pa = PrincipalAxisOf(BuildDataset(g, TiltConfig{}));
  const double angle = std::acos(std::min(1.0, std::abs(pa.v_max.z())));
  EXPECT_LT(RadToDeg(angle), 0.01);
}

TEST(PrincipalAxis, InvariantToPermutationAndScale) {
  const auto g = AxisSamples(Eigen::Vector3d(0.1, -0.9, 0.3).normalized(), 0.1, 300, 4);
  const Eigen::MatrixX3d X = BuildDataset(g, TiltConfig{});
  Eigen::MatrixX3d Y = X.colwise().reverse();
  Y *= 3.0;
  const PrincipalAxis a = PrincipalAxisOf(X);
  const PrincipalAxis b = PrincipalAxisOf(Y);
  EXPECT_NEAR(a.v_max.dot(b.v_max), 1.0, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b.eigenvalues[i], 9.0 * a.eigenvalues[i], 1e-9);
}

TEST(PrincipalAxis, IsotropicDataIsDegenerate) {
  Eigen::MatrixX3d X(6, 3);
  X << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  try {
    PrincipalAxisOf(X);
    FAIL();
  } catch (const CalibError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCovariance);
  }
  EXPECT_THROW(PrincipalAxisOf(Eigen::MatrixX3d::Zero(10, 3)), CalibError);
}

TEST(DisambiguateSign, IdentityPrior) {
  EXPECT_EQ(DisambiguateSign({0, 0, 1}, Rot3::Identity()), Eigen::Vector3d(0, 0, 1));
  EXPECT_EQ(DisambiguateSign({0, 0, -1}, Rot3::Identity()), Eigen::Vector3d(0, 0, 1));
}

TEST(DisambiguateSign, QuarterTurnAboutX) {
  const Rot3 prior = RotFromAxisAngle({Eigen::Vector3d(kPi / 2, 0, 0)});
  const Eigen::Vector3d v(0, 1, 0);
  const double d = (prior * v).z();  // +1: keep
  ASSERT_GT(d, 0.5);
  EXPECT_EQ(DisambiguateSign(v, prior), v);
  EXPECT_EQ(DisambiguateSign(-v, prior), v);
  try {
    DisambiguateSign({1, 0, 0}, prior);
    FAIL();
  } catch (const CalibError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAmbiguousSign);
  }
}

TEST(TiltFromAxis, AlignedAxisIsLevel) {
  const PitchRoll pr = TiltFromAxis(Eigen::Vector3d::UnitZ());
  EXPECT_EQ(pr.pitch, 0.0);
  EXPECT_EQ(pr.roll, 0.0);
}

TEST(TiltFromAxis, FiveDegreesAboutY) {
  const double a = DegToRad(5.0);
  const Eigen::Vector3d v(std::sin(a), 0, std::cos(a));
  const Rot3 r = AlignToZ(v);
  EXPECT_LT((r * v - Eigen::Vector3d::UnitZ()).norm(), 1e-9);
  const AxisAngle aa = AxisAngleFromRot(r);
  EXPECT_NEAR(aa.angle(), a, 1e-12);
  EXPECT_NEAR(std::abs(aa.theta.normalized().y()), 1.0, 1e-12);
  const PitchRoll pr = TiltFromAxis(v);
  EXPECT_NEAR(pr.pitch, -a, 1e-12);
  EXPECT_NEAR(pr.roll, 0.0, 1e-12);
}

TEST(TiltFromAxis, AntiparallelRejected) {
  try {
    TiltFromAxis(-Eigen::Vector3d::UnitZ());
    FAIL();
  } catch (const CalibError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAntiparallelAxis);
  }
}

TEST(TiltFromAxis, RecoversMountingTiltProperty) {
  // The chassis z axis seen from B is R_B^F^T e_z; aligning it back must
  // return the mounting pitch and roll for any tilt off gimbal lock.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pitch(-1.4, 1.4), roll(-3.0, 3.0);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double p = pitch(rng), r = roll(rng);
    const Eigen::Vector3d v = RotFromYpr({0.0, p, r}).matrix().transpose().col(2);
    if (v.z() < -1.0 + 1e-6) continue;
    const PitchRoll pr = TiltFromAxis(v);
    ASSERT_NEAR(pr.pitch, p, 1e-9);
    ASSERT_NEAR(WrapAngle(pr.roll - r), 0.0, 1e-9);
    const Rot3 a = AlignToZ(v);
    ASSERT_LT((a * v - Eigen::Vector3d::UnitZ()).norm(), 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

std::vector<ImuSample> PlanarGyro(const Rot3& R_B_O, const Eigen::Vector3d& bias, double noise,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ImuSample> out;
  const double dt = 0.005;
  for (int i = 0; i < 4000; ++i) {
    const double t = i * dt;
    double rate = 0.0;
    if (t >= 2.0 && t < 10.0) rate = 0.8;
    if (t >= 11.0 && t < 19.0) rate = -0.8;
    ImuSample s;
    s.t = t;
    s.gyro = R_B_O.inverse() * Eigen::Vector3d(0, 0, rate) + bias + noise * rng.Normal3();
    out.push_back(s);
  }
  return out;
}

TEST(CalibrateTilt, NoiseFreeRecoversMounting) {
  const double pitch = DegToRad(3.0), roll = DegToRad(-91.0);
  const Rot3 R_B_O = RotFromYpr({DegToRad(-89.3), pitch, roll});
  TiltConfig cfg;
  cfg.prior_R_B_O = RotFromYpr({DegToRad(-90), 0, DegToRad(-90)});
  const TiltResult t = CalibrateTilt(PlanarGyro(R_B_O, Eigen::Vector3d(0.003, -0.004, 0.001), 0.0, 1), cfg);
  EXPECT_NEAR(t.pitch, pitch, 1e-9);
  EXPECT_NEAR(t.roll, roll, 1e-9);
  EXPECT_NEAR(t.v_max.norm(), 1.0, 1e-9);
  EXPECT_GE(t.eigenvalues[0], t.eigenvalues[1]);
  EXPECT_GE(t.eigenvalues[1], t.eigenvalues[2]);
  EXPECT_GE(t.eigenvalues[2], 0.0);
  const Eigen::Vector3d up = t.RotBF() * t.v_max;
  EXPECT_LT((up - Eigen::Vector3d::UnitZ()).norm(), 1e-9);
}

TEST(CalibrateTilt, InvariantToSampleSignFlips) {
  const Rot3 R_B_O = RotFromYpr({0.2, 0.05, -1.5});
  auto samples = PlanarGyro(R_B_O, Eigen::Vector3d::Zero(), 0.01, 2);
  TiltConfig cfg;
  cfg.prior_R_B_O = R_B_O;
  cfg.still_duration = 0.0;
  const TiltResult a = CalibrateTilt(samples, cfg);
  for (std::size_t i = 0; i < samples.size(); i += 3) samples[i].gyro = -samples[i].gyro;
  const TiltResult b = CalibrateTilt(samples, cfg);
  EXPECT_NEAR(a.pitch, b.pitch, 1e-12);
  EXPECT_NEAR(a.roll, b.roll, 1e-12);
}

TEST(EstimateStillBias, AveragesLeadingWindow) {
  std::vector<ImuSample> s(300);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].t = 0.01 * i;
    s[i].gyro = i < 100 ? Eigen::Vector3d(1, 2, 3) : Eigen::Vector3d(50, 50, 50);
  }
  EXPECT_LT((EstimateStillBias(s, 1.0) - Eigen::Vector3d(1, 2, 3)).norm(), 1e-15);
  EXPECT_EQ(EstimateStillBias(s, 0.0), Eigen::Vector3d::Zero());
}

}  // namespace
}  // namespace chassis_calib
