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

// End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero exit
// if any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chassis_calib/allan.h"
#include "chassis_calib/camera_model.h"
#include "chassis_calib/commands.h"
#include "chassis_calib/extrinsic_opt.h"
#include "chassis_calib/geometry.h"
#include "chassis_calib/imu_model.h"
#include "chassis_calib/io.h"
#include "chassis_calib/pca_calib.h"
#include "chassis_calib/sim.h"

namespace chassis_calib {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

ScenarioSpec Noiseless(ScenarioSpec spec) {
  spec.imu = ImuIntrinsics::Identity();
  spec.imu_noise = {};
  spec.vio_noise = {};
  spec.velocity_noise_std.setZero();
  return spec;
}

TiltConfig PriorTiltConfig() {
  TiltConfig cfg;
  cfg.prior_R_B_O = RotFromYpr({DegToRad(-90.0), 0.0, DegToRad(-90.0)});
  return cfg;
}

std::vector<ImuSample> Corrected(std::vector<ImuSample> samples, const ImuIntrinsics& intr) {
  for (auto& s : samples) {
    s.gyro = CorrectGyro(s.gyro, intr);
    s.accel = CorrectAccel(s.accel, intr);
  }
  return samples;
}

std::vector<RelativePosePair> PairsFor(const Dataset& ds, const TiltResult& tilt) {
  return BuildPosePairs(VioPathToF(ds.vio_path, tilt, ds.truth.mounting.p_Bz_O), ds.odom_path,
                        kDefaultPairInterval);
}

SolverConfig PriorSolverConfig() {
  SolverConfig cfg;
  cfg.x0.theta_F_O = DegToRad(-90.0);
  return cfg;
}

// 1. Analytic Jacobian against central differences.
Outcome JacobianCheck() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const ExtrinsicParams x{Eigen::Vector2d(u(rng), u(rng)), kPi * u(rng), 1.0 + 0.45 * u(rng),
                            1.0 + 0.45 * u(rng)};
    RelativePosePair pair;
    pair.dp_F = {u(rng), u(rng)};
    pair.dp_O = {u(rng), u(rng)};
    pair.dtheta = kPi * u(rng);
    const Matrix25d J = Jacobian(x, pair);
    Matrix25d fd;
    const Vector5d v = x.ToVector();
    for (int j = 0; j < 5; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(v[j]));
      Vector5d a = v, b = v;
      a[j] += h;
      b[j] -= h;
      fd.col(j) = (Residual(ExtrinsicParams::FromVector(a), pair) -
                   Residual(ExtrinsicParams::FromVector(b), pair)) / (2.0 * h);
    }
    worst = std::max(worst, (J - fd).norm() / std::max(1.0, fd.norm()));
  }
  return {worst < 1e-6, "max rel err " + Num(worst)};
}

// 2. Noiseless extrinsics-cal recovery.
Outcome NoiselessRecovery() {
  const ScenarioSpec spec = Noiseless(StandardScenario("extrinsics-cal"));
  const Dataset ds = Generate(spec);
  TiltResult tilt;
  tilt.pitch = spec.mounting.pitch;
  tilt.roll = spec.mounting.roll;
  const SolveReport rep = Solve(PairsFor(ds, tilt), PriorSolverConfig());
  const ExtrinsicParams truth = spec.TrueExtrinsics();
  const ExtrinsicParams x = rep.x_star;
  const double dp = (x.p_F_O - truth.p_F_O).cwiseAbs().maxCoeff();
  const double dth = std::abs(RadToDeg(WrapAngle(x.theta_F_O - truth.theta_F_O)));
  const double dq = std::max(std::abs(x.q_x - truth.q_x), std::abs(x.q_y - truth.q_y));
  return {dp <= 1e-6 && dth <= 1e-4 && dq <= 1e-6,
          "dp " + Num(dp) + " m, dtheta " + Num(dth) + " deg, dq " + Num(dq)};
}

// 3. Spread of ten noisy calibrations against twice the reference spread.
Outcome NoisyRepeatability() {
  constexpr int kRuns = 10;
  std::vector<Vector5d> display_units;  // m, m, deg, %, %
  for (int run = 0; run < kRuns; ++run) {
    ScenarioSpec spec = StandardScenario("extrinsics-cal");
    spec.seed = 1000 + run;
    spec.velocity_noise_std = {0.01, 0.01, 0.01};
    const Dataset ds = Generate(spec);
    const TiltResult tilt = CalibrateTilt(Corrected(ds.imu_stream, spec.imu), PriorTiltConfig());
    const ExtrinsicParams x = Solve(PairsFor(ds, tilt), PriorSolverConfig()).x_star;
    Vector5d v;
    v << x.p_F_O.x(), x.p_F_O.y(), RadToDeg(x.theta_F_O), 100.0 * x.q_x, 100.0 * x.q_y;
    display_units.push_back(v);
  }
  Vector5d mean = Vector5d::Zero();
  for (const auto& v : display_units) mean += v / kRuns;
  Vector5d var = Vector5d::Zero();
  for (const auto& v : display_units) var += (v - mean).cwiseAbs2() / (kRuns - 1);
  const Vector5d sd = var.cwiseSqrt();
  Vector5d reference;
  reference << 0.0121, 0.004, 0.128, 1.957, 0.900;
  const Vector5d ratio = sd.cwiseQuotient(reference);
  std::string detail = "std/reference";
  for (int i = 0; i < 5; ++i) detail += " " + Num(ratio[i]);
  return {ratio.maxCoeff() <= 2.0, detail};
}

// 4. Tilt recovery with and without sensor noise.
Outcome TiltRecovery() {
  const ScenarioSpec noisy = StandardScenario("tilt-cal");
  const TiltResult a =
      CalibrateTilt(Corrected(Generate(noisy).imu_stream, noisy.imu), PriorTiltConfig());
  const double err_noisy = std::max(std::abs(RadToDeg(a.pitch - noisy.mounting.pitch)),
                                    std::abs(RadToDeg(WrapAngle(a.roll - noisy.mounting.roll))));
  const ScenarioSpec clean = Noiseless(noisy);
  const TiltResult b = CalibrateTilt(Generate(clean).imu_stream, PriorTiltConfig());
  const double err_clean = std::max(std::abs(RadToDeg(b.pitch - clean.mounting.pitch)),
                                    std::abs(RadToDeg(WrapAngle(b.roll - clean.mounting.roll))));
  const bool setup = std::abs(RadToDeg(noisy.mounting.pitch) - 3.0) < 1e-12 &&
                     std::abs(RadToDeg(noisy.mounting.roll) + 91.0) < 1e-12;
  return {setup && err_noisy <= 0.2 && err_clean <= 1e-7,
          "noisy " + Num(err_noisy) + " deg, noise-free " + Num(err_clean) + " deg"};
}

// 5. Allan white-noise and bias-instability read-off on a 2 h still stream.
Outcome AllanRecovery() {
  ScenarioSpec spec;
  spec.name = "still-2h";
  spec.duration = 7200.0;
  spec.sample_rate_imu = 200.0;
  spec.sample_rate_odom = 1.0;
  spec.motion_script = {{.type = SegmentType::kPause, .duration = 7200.0, .ramp = 0.0}};
  spec.imu_noise = Bmi055Noise();
  spec.seed = 5;
  const Dataset ds = Generate(spec);
  std::vector<double> gx;
  gx.reserve(ds.imu_stream.size());
  for (const auto& s : ds.imu_stream) gx.push_back(s.gyro.x());
  const auto curve =
      AllanDeviation(gx, spec.sample_rate_imu, DefaultTauGrid(gx.size(), spec.sample_rate_imu));
  const AllanFit fit = FitNoiseParams(curve);

  const double n = spec.imu_noise.gyro_white.x();
  const double k = spec.imu_noise.gyro_bias_instability.x();
  // Floor of sqrt(N^2/tau + K^2 tau/3), read with the same 0.664 convention.
  const double tau = std::sqrt(3.0) * n / k;
  const double bias_truth =
      std::sqrt(n * n / tau + k * k * tau / 3.0) / kBiasInstabilityFactor;
  const double e_white = fit.white_noise_density / n - 1.0;
  const double e_bias = fit.bias_instability / bias_truth - 1.0;
  return {std::abs(e_white) <= 0.10 && std::abs(e_bias) <= 0.20,
          "white " + Num(100 * e_white) + "%, bias instability " + Num(100 * e_bias) + "%"};
}

// 6. Rotation parameterisation round trips and the explicit Z-Y-X matrix.
Outcome GeometryRoundTrips() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> yaw(-kPi, kPi), pitch(-1.5, 1.5), roll(-kPi, kPi);
  std::normal_distribution<double> n;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const EulerYPR e{yaw(rng), pitch(rng), roll(rng)};
    const EulerYPR back = YprFromRot(RotFromYpr(e));
    worst = std::max({worst, std::abs(WrapAngle(back.yaw - e.yaw)),
                      std::abs(back.pitch - e.pitch), std::abs(WrapAngle(back.roll - e.roll))});
    Eigen::Vector3d axis(n(rng), n(rng), n(rng));
    const double angle = std::uniform_real_distribution<double>(0.0, kPi)(rng);
    const AxisAngle aa{axis.normalized() * angle};
    const Rot3 r = RotFromAxisAngle(aa);
    worst = std::max(worst, (RotFromAxisAngle(AxisAngleFromRot(r)).matrix() - r.matrix())
                                .cwiseAbs().maxCoeff());
  }
  double worst_matrix = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double y = yaw(rng), p = pitch(rng), r = roll(rng);
    const double c1 = std::cos(y), s1 = std::sin(y), c2 = std::cos(p), s2 = std::sin(p);
    const double c3 = std::cos(r), s3 = std::sin(r);
    Eigen::Matrix3d m;
    m << c1 * c2, c1 * s2 * s3 - s1 * c3, s1 * s3 + c1 * c3 * s2,
        s1 * c2, c1 * c3 + s1 * s2 * s3, s1 * s2 * c3 - c1 * s3,
        -s2, c2 * s3, c2 * c3;
    worst_matrix =
        std::max(worst_matrix, (RotFromYpr({y, p, r}).matrix() - m).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-9 && worst_matrix < 1e-12,
          "round trip " + Num(worst) + ", explicit matrix " + Num(worst_matrix)};
}

// 7. On-axis projection and distortion round trips for both cameras.
Outcome CameraChecks() {
  const PinholeIntrinsics rgb = Zr300RgbIntrinsics();
  const DistortionParams rgb_dist = Zr300RgbDistortion();
  const UnifiedModel fisheye = Zr300FisheyeModel();
  double on_axis = 0.0;
  for (double z : {0.2, 1.0, 7.5}) {
    const Eigen::Vector3d P(0, 0, z);
    on_axis = std::max(on_axis, (ProjectPinhole(P, rgb, rgb_dist) -
                                 Eigen::Vector2d(rgb.cx, rgb.cy)).norm());
    on_axis = std::max(on_axis, (ProjectUnified(P, fisheye) -
                                 Eigen::Vector2d(fisheye.pinhole.cx, fisheye.pinhole.cy)).norm());
  }
  double round_trip = 0.0;
  for (const DistortionParams& d : {rgb_dist, fisheye.dist}) {
    for (double x = -0.8; x <= 0.8 + 1e-12; x += 0.02) {
      for (double y = -0.8; y <= 0.8 + 1e-12; y += 0.02) {
        const Eigen::Vector2d xy(x, y);
        if (xy.norm() > 0.8) continue;
        round_trip = std::max(round_trip, (Undistort(Distort(xy, d), d) - xy).norm());
      }
    }
  }
  return {on_axis < 1e-9 && round_trip < 1e-6,
          "on-axis " + Num(on_axis) + " px, round trip " + Num(round_trip)};
}

// 8. Worst-case accelerometer levelling error.
Outcome LevellingArithmetic() {
  const double deg = RadToDeg(AccelLevellingError(0.686, 9.8));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f deg", deg);
  return {std::abs(deg - 4.004) <= 0.01, buf};
}

// 9. Byte-identical simulation output and order-independent solving.
Outcome Determinism() {
  namespace fs = std::filesystem;
  const fs::path root =
      fs::temp_directory_path() / ("chassis_calib_acceptance_" + std::to_string(::getpid()));
  std::ostringstream err;
  bool identical = CmdSimulate({"extrinsics-cal", (root / "a").string(), 7}, err) == kExitOk &&
                   CmdSimulate({"extrinsics-cal", (root / "b").string(), 7}, err) == kExitOk;
  for (const char* f : {"imu.csv", "odom_path.tum", "vio_path.tum", "truth.json"}) {
    if (!identical) break;
    identical = ReadFile((root / "a" / f).string()) == ReadFile((root / "b" / f).string());
  }
  fs::remove_all(root);

  const ScenarioSpec spec = StandardScenario("extrinsics-cal");
  const Dataset ds = Generate(spec);
  TiltResult tilt;
  tilt.pitch = spec.mounting.pitch;
  tilt.roll = spec.mounting.roll;
  auto pairs = PairsFor(ds, tilt);
  const Vector5d a = Solve(pairs, PriorSolverConfig()).x_star.ToVector();
  std::mt19937_64 rng(909);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const Vector5d b = Solve(pairs, PriorSolverConfig()).x_star.ToVector();
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return {identical && diff <= 1e-10,
          std::string(identical ? "files identical" : "files differ") + ", shuffle diff " +
              Num(diff)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace chassis_calib

int main() {
  using namespace chassis_calib;
  const std::vector<Criterion> criteria = {
      {1, "jacobian vs finite differences", 5.0, JacobianCheck},
      {2, "noiseless extrinsics recovery", 10.0, NoiselessRecovery},
      {3, "noisy repeatability", 120.0, NoisyRepeatability},
      {4, "tilt recovery", 10.0, TiltRecovery},
      {5, "allan recovery", 30.0, AllanRecovery},
      {6, "geometry round trips", 60.0, GeometryRoundTrips},
      {7, "camera model", 60.0, CameraChecks},
      {8, "levelling arithmetic", 1.0, LevellingArithmetic},
      {9, "determinism", 60.0, Determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d %s: %s (%s; %.2f s of %.0f s)\n", c.id, c.name,
                pass ? "PASS" : "FAIL", out.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
