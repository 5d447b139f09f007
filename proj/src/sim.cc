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

#include "chassis_calib/sim.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "chassis_calib/error.h"
#include "chassis_calib/rng.h"

namespace chassis_calib {

namespace {

// Odometry is integrated internally at this multiple of the output rate.
constexpr int kOdomSubsteps = 20;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

struct Profile {
  double p = 0.0;     // normalised speed in [0, 1]
  double P = 0.0;     // integral of p
  double pdot = 0.0;  // derivative of p
};

Profile Trapezoid(double tau, double duration, double ramp) {
  tau = std::clamp(tau, 0.0, duration);
  if (ramp <= 0.0) return {1.0, tau, 0.0};
  const double hold_end = duration - ramp;
  if (tau < ramp) return {tau / ramp, 0.5 * tau * tau / ramp, 1.0 / ramp};
  if (tau <= hold_end) return {1.0, 0.5 * ramp + (tau - ramp), 0.0};
  const double rem = duration - tau;
  return {rem / ramp, (duration - ramp) - 0.5 * rem * rem / ramp, -1.0 / ramp};
}

Eigen::Vector2d Unit(double a) { return {std::cos(a), std::sin(a)}; }

ChassisState Evaluate(const MotionSegment& seg, const ChassisState& s0, double tau) {
  ChassisState st;
  st.position = s0.position;
  st.yaw = s0.yaw;
  const Profile pr = Trapezoid(tau, seg.duration, seg.ramp);
  switch (seg.type) {
    case SegmentType::kPause:
      break;
    case SegmentType::kSpin:
      st.yaw = s0.yaw + seg.omega * pr.P;
      st.yaw_rate = seg.omega * pr.p;
      st.yaw_accel = seg.omega * pr.pdot;
      break;
    case SegmentType::kLine:
    case SegmentType::kArc: {
      const double k = seg.type == SegmentType::kArc ? seg.curvature : 0.0;
      const double v = seg.speed;
      const double s = v * pr.P;
      const double a0 = s0.yaw + seg.direction;
      const double half = 0.5 * k * s;
      // Chord length S * sinc(k S / 2) toward the mid-arc direction.
      const double chord = std::abs(half) < 1e-12 ? s : std::sin(half) / (0.5 * k);
      const double a = a0 + k * s;
      st.position = s0.position + chord * Unit(a0 + half);
      st.velocity = v * pr.p * Unit(a);
      st.acceleration = v * pr.pdot * Unit(a) + k * v * v * pr.p * pr.p * Unit(a + 0.5 * kPi);
      if (seg.type == SegmentType::kArc && !seg.heading_locked) {
        st.yaw = s0.yaw + k * s;
        st.yaw_rate = k * v * pr.p;
        st.yaw_accel = k * v * pr.pdot;
      }
      break;
    }
  }
  return st;
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw CalibError(ErrorCode::kInvalidScript, what);
}

MotionSegment Pause(double d) {
  return {.type = SegmentType::kPause, .duration = d, .ramp = 0.0};
}

MotionSegment Spin(double d, double omega, double ramp = 1.0) {
  return {.type = SegmentType::kSpin, .duration = d, .ramp = ramp, .omega = omega};
}

MotionSegment Line(double d, double speed, double direction, double ramp = 1.0) {
  return {.type = SegmentType::kLine, .duration = d, .ramp = ramp, .speed = speed,
          .direction = direction};
}

MotionSegment StrafeArc(double d, double speed, double curvature, double direction,
                        double ramp = 1.0) {
  return {.type = SegmentType::kArc, .duration = d, .ramp = ramp, .speed = speed,
          .direction = direction, .curvature = curvature, .heading_locked = true};
}

double ScriptDuration(const std::vector<MotionSegment>& script) {
  double total = 0.0;
  for (const auto& s : script) total += s.duration;
  return total;
}

ScenarioSpec BaseSpec(std::string name) {
  ScenarioSpec spec;
  spec.name = std::move(name);
  spec.mounting.p_F_O = {0.1008, 0.064};
  spec.mounting.theta_F_O = DegToRad(-89.29);
  spec.mounting.pitch = DegToRad(-2.7373);
  spec.mounting.roll = DegToRad(-91.1430);
  // Approximate; the IMU sits roughly 0.6 m from the chassis centre in the
  // reference platform, mostly above the plane.
  spec.mounting.p_Bz_O = 0.25;
  spec.imu = Bmi055Intrinsics();
  spec.imu_noise = Bmi055Noise();
  spec.chassis_scale = {1.0 / 0.99733, 1.0 / 1.0374, 1.0};
  spec.vio_noise = {.position_std = 0.002, .yaw_std = DegToRad(0.05), .drift_rate = 0.0};
  spec.seed = 1;
  return spec;
}

}  // namespace

Rot3 Mounting::RotBO() const { return RotFromYpr({theta_F_O, pitch, roll}); }

Pose3 Mounting::PoseBO() const {
  return {RotBO(), Eigen::Vector3d(p_F_O.x(), p_F_O.y(), p_Bz_O)};
}

ExtrinsicParams ScenarioSpec::TrueExtrinsics() const {
  ExtrinsicParams x;
  x.p_F_O = mounting.p_F_O;
  x.theta_F_O = WrapAngle(mounting.theta_F_O);
  x.q_x = 1.0 / chassis_scale.s_x;
  x.q_y = 1.0 / chassis_scale.s_y;
  return x;
}

void ScenarioSpec::Validate() const {
  Require(std::isfinite(duration) && duration > 0.0, "duration must be positive");
  Require(sample_rate_imu > 0.0 && sample_rate_odom > 0.0, "sample rates must be positive");
  Require(!motion_script.empty(), "motion script is empty");
  for (std::size_t i = 0; i < motion_script.size(); ++i) {
    const auto& s = motion_script[i];
    std::ostringstream where;
    where << "segment " << i << ": ";
    Require(std::isfinite(s.duration) && s.duration > 0.0,
            where.str() + "duration must be positive");
    Require(s.ramp >= 0.0 && 2.0 * s.ramp <= s.duration + 1e-12,
            where.str() + "ramps must fit inside the segment");
    Require(std::isfinite(s.speed) && std::isfinite(s.direction) &&
                std::isfinite(s.curvature) && std::isfinite(s.omega),
            where.str() + "non-finite motion parameter");
  }
  const double total = ScriptDuration(motion_script);
  Require(std::abs(total - duration) <= 1e-9 * std::max(1.0, duration),
          "motion script durations do not sum to the scenario duration");
  Require(mounting.p_F_O.allFinite() && std::isfinite(mounting.theta_F_O) &&
              std::isfinite(mounting.pitch) && std::isfinite(mounting.roll) &&
              std::isfinite(mounting.p_Bz_O),
          "non-finite mounting");
  Require(std::abs(mounting.pitch) < 0.5 * kPi - 1e-6, "mounting pitch at gimbal lock");
  Require(velocity_noise_std.allFinite() && (velocity_noise_std.array() >= 0.0).all(),
          "velocity noise must be >= 0");
  Require(vio_noise.position_std >= 0.0 && vio_noise.yaw_std >= 0.0 &&
              vio_noise.drift_rate >= 0.0,
          "VIO noise must be >= 0");
  try {
    imu.Validate();
    imu_noise.Validate();
    chassis_scale.Validate();
  } catch (const CalibError& e) {
    throw CalibError(ErrorCode::kInvalidScript, e.what());
  }
}

BodyVelocity ChassisState::BodyVel() const {
  const Eigen::Vector2d v = Rot2{-yaw} * velocity;
  return {v.x(), v.y(), yaw_rate};
}

MotionTrajectory::MotionTrajectory(std::vector<MotionSegment> script)
    : script_(std::move(script)) {
  ChassisState state;
  double t = 0.0;
  for (const auto& seg : script_) {
    starts_.push_back(t);
    start_states_.push_back(state);
    state = Evaluate(seg, state, seg.duration);
    t += seg.duration;
  }
  starts_.push_back(t);
}

ChassisState MotionTrajectory::At(double t) const {
  if (script_.empty()) return {};
  t = std::clamp(t, 0.0, duration());
  auto it = std::upper_bound(starts_.begin(), starts_.end() - 1, t);
  const auto i = static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
  return Evaluate(script_[i], start_states_[i], t - starts_[i]);
}

ImuTruth TrueImu(const ChassisState& state, const Mounting& mounting) {
  const Eigen::Matrix3d R_O_W = RotZ(state.yaw).matrix();
  const Eigen::Matrix3d R_B_W = R_O_W * mounting.RotBO().matrix();
  const Eigen::Vector3d w(0.0, 0.0, state.yaw_rate);
  const Eigen::Vector3d w_dot(0.0, 0.0, state.yaw_accel);
  const Eigen::Vector3d lever =
      R_O_W * Eigen::Vector3d(mounting.p_F_O.x(), mounting.p_F_O.y(), mounting.p_Bz_O);
  const Eigen::Vector3d a_center(state.acceleration.x(), state.acceleration.y(), 0.0);
  const Eigen::Vector3d a_imu = a_center + w_dot.cross(lever) + w.cross(w.cross(lever));

  ImuTruth out;
  out.gyro = R_B_W.transpose() * w;
  out.accel = R_B_W.transpose() * (a_imu + Eigen::Vector3d(0.0, 0.0, kGravity));
  return out;
}

Pose3 VioWorldOffset() {
  return {RotZ(0.7), Eigen::Vector3d(1.5, -2.0, 0.3)};
}

Dataset Generate(const ScenarioSpec& spec) {
  spec.Validate();
  const MotionTrajectory traj(spec.motion_script);
  Dataset ds;

  // IMU stream.
  {
    Rng rng(StreamSeed(spec.seed, 1));
    const auto n = static_cast<std::size_t>(std::llround(spec.duration * spec.sample_rate_imu));
    const double dt = 1.0 / spec.sample_rate_imu;
    Eigen::Vector3d drift_g = Eigen::Vector3d::Zero();
    Eigen::Vector3d drift_a = Eigen::Vector3d::Zero();
    ImuIntrinsics intr = spec.imu;
    ds.imu_stream.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / spec.sample_rate_imu;
      const ImuTruth truth = TrueImu(traj.At(t), spec.mounting);
      intr.b_g = spec.imu.b_g + drift_g;
      intr.b_a = spec.imu.b_a + drift_a;
      ImuSample s;
      s.t = t;
      s.gyro = SimulateGyro(truth.gyro, intr, spec.imu_noise, dt, rng);
      s.accel = SimulateAccel(truth.accel, intr, spec.imu_noise, dt, rng);
      ds.imu_stream.push_back(s);
      drift_g = EvolveBias(drift_g, spec.imu_noise.gyro_bias_instability, dt, rng);
      drift_a = EvolveBias(drift_a, spec.imu_noise.accel_bias_instability, dt, rng);
    }
  }

  const auto n_odom =
      static_cast<std::size_t>(std::llround(spec.duration * spec.sample_rate_odom));
  const double dt_odom = 1.0 / spec.sample_rate_odom;

  // Wheel odometry, integrated finely then decimated.
  {
    Rng rng(StreamSeed(spec.seed, 2));
    const double sub_rate = spec.sample_rate_odom * kOdomSubsteps;
    const Eigen::Vector3d sub_noise = spec.velocity_noise_std * std::sqrt(double{kOdomSubsteps});
    const std::size_t n_fine = n_odom == 0 ? 0 : (n_odom - 1) * kOdomSubsteps + 1;
    std::vector<TimedVelocity> measured;
    measured.reserve(n_fine);
    for (std::size_t j = 0; j < n_fine; ++j) {
      const double t = static_cast<double>(j) / sub_rate;
      measured.push_back(
          {t, MeasureVelocity(traj.At(t).BodyVel(), spec.chassis_scale, sub_noise, rng)});
    }
    const std::vector<TimedPose2> fine = DeadReckon(measured, ChassisScale{});
    ds.odom_path.reserve(n_odom);
    for (std::size_t k = 0; k < n_odom; ++k) {
      TimedPose2 p = fine[k * kOdomSubsteps];
      p.t = static_cast<double>(k) / spec.sample_rate_odom;
      ds.odom_path.push_back(p);
    }
  }

  // VIO path and ground truth.
  {
    Rng rng(StreamSeed(spec.seed, 3));
    const Pose3 T_W_V = VioWorldOffset();
    const Pose3 T_B_O = spec.mounting.PoseBO();
    Eigen::Vector3d drift = Eigen::Vector3d::Zero();
    ds.vio_path.reserve(n_odom);
    ds.truth.chassis_path.reserve(n_odom);
    for (std::size_t k = 0; k < n_odom; ++k) {
      const double t = static_cast<double>(k) / spec.sample_rate_odom;
      const ChassisState st = traj.At(t);
      ds.truth.chassis_path.push_back({t, Pose2{Rot2{WrapAngle(st.yaw)}, st.position}});

      const Pose3 T_O_W{RotZ(st.yaw), Eigen::Vector3d(st.position.x(), st.position.y(), 0.0)};
      Pose3 T_B_V = T_W_V * T_O_W * T_B_O;

      const Eigen::Vector3d step = rng.Normal3();
      const Eigen::Vector3d white = rng.Normal3();
      const double yaw_noise = rng.Normal();
      if (k > 0) drift += spec.vio_noise.drift_rate * std::sqrt(dt_odom) * step;
      T_B_V.p += drift + spec.vio_noise.position_std * white;
      T_B_V.rot = RotZ(spec.vio_noise.yaw_std * yaw_noise) * T_B_V.rot;
      ds.vio_path.push_back({t, T_B_V});
    }
    ds.truth.T_W_V = T_W_V;
  }

  ds.truth.mounting = spec.mounting;
  ds.truth.extrinsics = spec.TrueExtrinsics();
  ds.truth.chassis_scale = spec.chassis_scale;
  ds.truth.imu = spec.imu;
  ds.truth.imu_noise = spec.imu_noise;
  return ds;
}

std::vector<NamedScenario> StandardScenarios() {
  std::vector<NamedScenario> out;

  {
    ScenarioSpec spec = BaseSpec("tilt-cal");
    spec.mounting.pitch = DegToRad(3.0);
    spec.mounting.roll = DegToRad(-91.0);
    // Balanced spins in both directions cancel residual gyro bias to first order.
    spec.motion_script = {Pause(2),       Spin(10, 0.8), Pause(1),  Spin(10, -0.8),
                          Pause(1),       Line(4, 0.3, 0.0), Pause(1), Spin(6, 0.5),
                          Pause(1),       Spin(6, -0.5), Pause(2)};
    spec.duration = ScriptDuration(spec.motion_script);
    spec.seed = 11;
    out.push_back({spec.name, spec});
  }

  {
    ScenarioSpec spec = BaseSpec("extrinsics-cal");
    // Figure-eight strafing at locked heading plus in-place spins. Every
    // segment boundary falls on the 0.5 s pair grid.
    spec.motion_script = {
        Pause(2),
        StrafeArc(12, 0.3, 2.0, 0.0),  Pause(1),
        StrafeArc(12, 0.3, -2.0, 0.0), Pause(1),
        Spin(6, 0.6),                  Pause(1),
        Line(4, 0.3, 0.25 * kPi),      Pause(1),
        Spin(5, -0.8),                 Pause(1),
        StrafeArc(12, 0.3, 2.0, 0.5 * kPi),  Pause(1),
        StrafeArc(12, 0.3, -2.0, 0.5 * kPi), Pause(1),
        Spin(5, 0.5),                  Pause(1),
        Line(4, 0.3, -0.5 * kPi),      Pause(1),
        Spin(5, -0.5),                 Pause(1),
        Spin(5, 0.7),                  Pause(1),
        Spin(5, -0.7),                 Pause(2),
    };
    spec.duration = ScriptDuration(spec.motion_script);
    spec.seed = 22;
    out.push_back({spec.name, spec});
  }

  {
    ScenarioSpec spec = BaseSpec("still-10h");
    spec.motion_script = {Pause(36000.0)};
    spec.duration = 36000.0;
    spec.seed = 33;
    out.push_back({spec.name, spec});
  }

  return out;
}

ScenarioSpec StandardScenario(const std::string& name) {
  for (auto& s : StandardScenarios()) {
    if (s.name == name) return s.spec;
  }
  throw CalibError(ErrorCode::kInvalidScript, "unknown scenario '" + name + "'");
}

}  // namespace chassis_calib
