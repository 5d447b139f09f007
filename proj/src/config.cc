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

#include "chassis_calib/config.h"

#include <algorithm>
#include <initializer_list>
#include <string_view>

#include "chassis_calib/error.h"
#include "chassis_calib/io.h"

namespace chassis_calib {

namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& why) {
  throw CalibError(ErrorCode::kParseError, where + ": " + why);
}

void CheckObject(const Json& j, const std::string& where,
                 std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) Fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(where, "unknown key '" + key + "'");
    }
  }
}

const Json& At(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) Fail(where, std::string("missing key '") + key + "'");
  return *it;
}

double Num(const Json& j, const char* key, const std::string& where) {
  const Json& v = At(j, key, where);
  if (!v.is_number()) Fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double NumOr(const Json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? Num(j, key, where) : fallback;
}

template <int N>
Eigen::Matrix<double, N, 1> Vec(const Json& j, const char* key, const std::string& where) {
  const Json& v = At(j, key, where);
  if (!v.is_array() || v.size() != static_cast<std::size_t>(N)) {
    Fail(where + "." + key, "expected an array of " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!v[i].is_number()) Fail(where + "." + key, "expected numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

template <typename Derived>
Json Array(const Eigen::MatrixBase<Derived>& m) {
  Json a = Json::array();
  // Row-major flattening.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
  }
  return a;
}

Eigen::Matrix3d Mat3(const Json& j, const char* key, const std::string& where) {
  const Eigen::Matrix<double, 9, 1> v = Vec<9>(j, key, where);
  return Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(v.data());
}

Eigen::Matrix4d Mat4(const Json& j, const char* key, const std::string& where) {
  const Eigen::Matrix<double, 16, 1> v = Vec<16>(j, key, where);
  return Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(v.data());
}

// Library validation errors surface as bad input from a file.
template <typename F>
void Validated(const std::string& where, F&& f) {
  try {
    f();
  } catch (const CalibError& e) {
    Fail(where, e.what());
  }
}

ImuIntrinsics ImuIntrinsicsFromJsonImpl(const Json& j, const std::string& where) {
  ImuIntrinsics intr;
  intr.T_a = Mat3(j, "T_a", where);
  intr.k_a = Vec<3>(j, "K_a", where);
  intr.b_a = Vec<3>(j, "b_a", where);
  intr.T_g = Mat3(j, "T_g", where);
  intr.k_g = Vec<3>(j, "K_g", where);
  intr.b_g = Vec<3>(j, "b_g", where);
  Validated(where, [&] { intr.Validate(); });
  return intr;
}

ImuNoiseParams ImuNoiseFromJsonImpl(const Json& j, const std::string& where) {
  CheckObject(j, where,
              {"accel_white", "gyro_white", "accel_bias_instability", "gyro_bias_instability"});
  ImuNoiseParams n;
  n.accel_white = Vec<3>(j, "accel_white", where);
  n.gyro_white = Vec<3>(j, "gyro_white", where);
  n.accel_bias_instability = Vec<3>(j, "accel_bias_instability", where);
  n.gyro_bias_instability = Vec<3>(j, "gyro_bias_instability", where);
  Validated(where, [&] { n.Validate(); });
  return n;
}

ExtrinsicParams ExtrinsicsFromJsonImpl(const Json& j, const std::string& where) {
  CheckObject(j, where, {"p_F_O", "theta_F_O_deg", "q_x", "q_y"});
  ExtrinsicParams x;
  x.p_F_O = Vec<2>(j, "p_F_O", where);
  x.theta_F_O = DegToRad(Num(j, "theta_F_O_deg", where));
  x.q_x = Num(j, "q_x", where);
  x.q_y = Num(j, "q_y", where);
  return x;
}

const char* SegmentName(SegmentType t) {
  switch (t) {
    case SegmentType::kPause: return "pause";
    case SegmentType::kLine: return "line";
    case SegmentType::kArc: return "arc";
    case SegmentType::kSpin: return "spin";
  }
  return "pause";
}

SegmentType SegmentFromName(const std::string& s, const std::string& where) {
  if (s == "pause") return SegmentType::kPause;
  if (s == "line") return SegmentType::kLine;
  if (s == "arc") return SegmentType::kArc;
  if (s == "spin") return SegmentType::kSpin;
  Fail(where, "unknown segment type '" + s + "'");
}

std::string Str(const Json& j, const char* key, const std::string& where) {
  const Json& v = At(j, key, where);
  if (!v.is_string()) Fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

Json ImuIntrinsicsToJson(const ImuIntrinsics& intr) {
  Json j;
  j["T_a"] = Array(intr.T_a);
  j["K_a"] = Array(intr.k_a.transpose());
  j["b_a"] = Array(intr.b_a.transpose());
  j["T_g"] = Array(intr.T_g);
  j["K_g"] = Array(intr.k_g.transpose());
  j["b_g"] = Array(intr.b_g.transpose());
  return j;
}

ImuIntrinsics ImuIntrinsicsFromJson(const Json& j) {
  CheckObject(j, "imu", {"T_a", "K_a", "b_a", "T_g", "K_g", "b_g"});
  return ImuIntrinsicsFromJsonImpl(j, "imu");
}

Json ImuNoiseToJson(const ImuNoiseParams& n) {
  Json j;
  j["accel_white"] = Array(n.accel_white.transpose());
  j["gyro_white"] = Array(n.gyro_white.transpose());
  j["accel_bias_instability"] = Array(n.accel_bias_instability.transpose());
  j["gyro_bias_instability"] = Array(n.gyro_bias_instability.transpose());
  return j;
}

ImuNoiseParams ImuNoiseFromJson(const Json& j) { return ImuNoiseFromJsonImpl(j, "noise"); }

Config ConfigFromJson(const Json& j) {
  CheckObject(j, "config", {"imu", "cameras", "chassis", "mounting", "solver", "tilt"});
  Config c;

  if (j.contains("imu")) {
    const Json& b = j["imu"];
    CheckObject(b, "imu", {"T_a", "K_a", "b_a", "T_g", "K_g", "b_g", "noise"});
    c.imu = ImuIntrinsicsFromJsonImpl(b, "imu");
    if (b.contains("noise")) c.imu_noise = ImuNoiseFromJsonImpl(b["noise"], "imu.noise");
  }

  if (j.contains("cameras")) {
    const Json& arr = j["cameras"];
    if (!arr.is_array()) Fail("cameras", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "cameras[" + std::to_string(i) + "]";
      const Json& b = arr[i];
      CheckObject(b, where,
                  {"name", "model", "fx", "fy", "cx", "cy", "alpha", "distortion", "zeta", "T_C_B"});
      CameraConfig cam;
      cam.name = Str(b, "name", where);
      const std::string model = Str(b, "model", where);
      if (model == "pinhole") {
        cam.kind = CameraKind::kPinhole;
      } else if (model == "unified") {
        cam.kind = CameraKind::kUnified;
      } else {
        Fail(where + ".model", "expected 'pinhole' or 'unified'");
      }
      auto& pin = cam.model.pinhole;
      pin.fx = Num(b, "fx", where);
      pin.fy = Num(b, "fy", where);
      pin.cx = Num(b, "cx", where);
      pin.cy = Num(b, "cy", where);
      pin.alpha = NumOr(b, "alpha", 0.0, where);
      if (b.contains("distortion")) {
        const Json& d = b["distortion"];
        const std::string dw = where + ".distortion";
        CheckObject(d, dw, {"k1", "k2", "k3", "p1", "p2"});
        cam.model.dist = {NumOr(d, "k1", 0.0, dw), NumOr(d, "k2", 0.0, dw),
                          NumOr(d, "k3", 0.0, dw), NumOr(d, "p1", 0.0, dw),
                          NumOr(d, "p2", 0.0, dw)};
      }
      cam.model.zeta = NumOr(b, "zeta", 0.0, where);
      if (b.contains("T_C_B")) {
        cam.T_C_B = Mat4(b, "T_C_B", where);
        if (!cam.T_C_B.row(3).isApprox(Eigen::RowVector4d(0, 0, 0, 1))) {
          Fail(where + ".T_C_B", "last row must be 0 0 0 1");
        }
      }
      Validated(where, [&] { cam.model.Validate(); });
      c.cameras.push_back(cam);
    }
  }

  if (j.contains("chassis")) {
    const Json& b = j["chassis"];
    CheckObject(b, "chassis",
                {"wheel_radius", "half_length", "half_width", "scales", "velocity_noise_std"});
    ChassisConfig ch;
    ch.geometry.wheel_radius = NumOr(b, "wheel_radius", ch.geometry.wheel_radius, "chassis");
    ch.geometry.half_length = NumOr(b, "half_length", ch.geometry.half_length, "chassis");
    ch.geometry.half_width = NumOr(b, "half_width", ch.geometry.half_width, "chassis");
    if (b.contains("scales")) {
      const Eigen::Vector3d s = Vec<3>(b, "scales", "chassis");
      ch.scale = {s.x(), s.y(), s.z()};
    }
    if (b.contains("velocity_noise_std")) {
      ch.velocity_noise_std = Vec<3>(b, "velocity_noise_std", "chassis");
      if ((ch.velocity_noise_std.array() < 0.0).any()) {
        Fail("chassis.velocity_noise_std", "must be >= 0");
      }
    }
    Validated("chassis", [&] {
      ch.geometry.Validate();
      ch.scale.Validate();
    });
    c.chassis = ch;
  }

  if (j.contains("mounting")) {
    const Json& b = j["mounting"];
    CheckObject(b, "mounting", {"prior_ypr_deg", "p_Bz_O"});
    MountingConfig m;
    const Eigen::Vector3d ypr = Vec<3>(b, "prior_ypr_deg", "mounting");
    m.prior_ypr = {DegToRad(ypr[0]), DegToRad(ypr[1]), DegToRad(ypr[2])};
    m.p_Bz_O = Num(b, "p_Bz_O", "mounting");
    c.mounting = m;
  }

  if (j.contains("solver")) {
    const Json& b = j["solver"];
    CheckObject(b, "solver", {"loss", "huber_delta", "max_iterations", "gradient_tol", "step_tol",
                              "interval", "x0"});
    SolverBlock s;
    if (b.contains("loss")) {
      const std::string loss = Str(b, "loss", "solver");
      if (loss == "huber") {
        s.solver.loss = LossKind::kHuber;
      } else if (loss == "none") {
        s.solver.loss = LossKind::kNone;
      } else {
        Fail("solver.loss", "expected 'huber' or 'none'");
      }
    }
    s.solver.huber_delta = NumOr(b, "huber_delta", s.solver.huber_delta, "solver");
    if (b.contains("max_iterations")) {
      const Json& v = b["max_iterations"];
      if (!v.is_number_integer()) Fail("solver.max_iterations", "expected an integer");
      s.solver.max_iterations = v.get<int>();
    }
    s.solver.gradient_tol = NumOr(b, "gradient_tol", s.solver.gradient_tol, "solver");
    s.solver.step_tol = NumOr(b, "step_tol", s.solver.step_tol, "solver");
    s.interval = NumOr(b, "interval", s.interval, "solver");
    if (b.contains("x0")) {
      s.solver.x0 = ExtrinsicsFromJsonImpl(b["x0"], "solver.x0");
      s.x0_given = true;
    }
    if (!(s.interval > 0.0)) Fail("solver.interval", "must be positive");
    Validated("solver", [&] { s.solver.Validate(); });
    c.solver = s;
  }

  if (j.contains("tilt")) {
    const Json& b = j["tilt"];
    CheckObject(b, "tilt", {"min_rate", "still_duration"});
    TiltBlock t;
    t.min_rate = NumOr(b, "min_rate", t.min_rate, "tilt");
    t.still_duration = NumOr(b, "still_duration", t.still_duration, "tilt");
    c.tilt = t;
  }
  return c;
}

Json ConfigToJson(const Config& c) {
  Json j = Json::object();
  if (c.imu) {
    Json b = ImuIntrinsicsToJson(*c.imu);
    if (c.imu_noise) b["noise"] = ImuNoiseToJson(*c.imu_noise);
    j["imu"] = b;
  }
  if (!c.cameras.empty()) {
    Json arr = Json::array();
    for (const auto& cam : c.cameras) {
      Json b;
      b["name"] = cam.name;
      b["model"] = cam.kind == CameraKind::kPinhole ? "pinhole" : "unified";
      b["fx"] = cam.model.pinhole.fx;
      b["fy"] = cam.model.pinhole.fy;
      b["cx"] = cam.model.pinhole.cx;
      b["cy"] = cam.model.pinhole.cy;
      b["alpha"] = cam.model.pinhole.alpha;
      b["distortion"] = {{"k1", cam.model.dist.k1}, {"k2", cam.model.dist.k2},
                         {"k3", cam.model.dist.k3}, {"p1", cam.model.dist.p1},
                         {"p2", cam.model.dist.p2}};
      b["zeta"] = cam.model.zeta;
      b["T_C_B"] = Array(cam.T_C_B);
      arr.push_back(b);
    }
    j["cameras"] = arr;
  }
  if (c.chassis) {
    const auto& ch = *c.chassis;
    j["chassis"] = {{"wheel_radius", ch.geometry.wheel_radius},
                    {"half_length", ch.geometry.half_length},
                    {"half_width", ch.geometry.half_width},
                    {"scales", {ch.scale.s_x, ch.scale.s_y, ch.scale.s_z}},
                    {"velocity_noise_std", Array(ch.velocity_noise_std.transpose())}};
  }
  if (c.mounting) {
    const auto& m = *c.mounting;
    j["mounting"] = {{"prior_ypr_deg",
                      {RadToDeg(m.prior_ypr.yaw), RadToDeg(m.prior_ypr.pitch),
                       RadToDeg(m.prior_ypr.roll)}},
                     {"p_Bz_O", m.p_Bz_O}};
  }
  if (c.solver) {
    const auto& s = *c.solver;
    j["solver"] = {{"loss", s.solver.loss == LossKind::kHuber ? "huber" : "none"},
                   {"huber_delta", s.solver.huber_delta},
                   {"max_iterations", s.solver.max_iterations},
                   {"gradient_tol", s.solver.gradient_tol},
                   {"step_tol", s.solver.step_tol},
                   {"interval", s.interval}};
    if (s.x0_given) j["solver"]["x0"] = ExtrinsicsToJson(s.solver.x0);
  }
  if (c.tilt) {
    j["tilt"] = {{"min_rate", c.tilt->min_rate}, {"still_duration", c.tilt->still_duration}};
  }
  return j;
}

Config LoadConfig(const std::string& path) {
  return ConfigFromJson(ParseJson(ReadFile(path), path));
}

Config ReferenceConfig() {
  Config c;
  c.imu = Bmi055Intrinsics();
  c.imu_noise = Bmi055Noise();

  CameraConfig rgb;
  rgb.name = "rgb";
  rgb.kind = CameraKind::kPinhole;
  rgb.model.pinhole = Zr300RgbIntrinsics();
  rgb.model.dist = Zr300RgbDistortion();
  c.cameras.push_back(rgb);

  CameraConfig fisheye;
  fisheye.name = "fisheye";
  fisheye.kind = CameraKind::kUnified;
  fisheye.model = Zr300FisheyeModel();
  fisheye.T_C_B << 0.9991, -0.0395, 0.0124, 0.097,
                   0.0393, 0.9992, 0.0098, 0.0084,
                   -0.0128, -0.0093, 0.9999, -0.0002,
                   0.0, 0.0, 0.0, 1.0;
  c.cameras.push_back(fisheye);

  c.chassis = ChassisConfig{};
  c.mounting = MountingConfig{{DegToRad(-90.0), 0.0, DegToRad(-90.0)}, 0.25};
  c.solver = SolverBlock{};
  c.tilt = TiltBlock{};
  return c;
}

Json TiltToJson(const TiltResult& t) {
  return {{"pitch_rad", t.pitch},
          {"roll_rad", t.roll},
          {"pitch_deg", RadToDeg(t.pitch)},
          {"roll_deg", RadToDeg(t.roll)},
          {"v_max", Array(t.v_max.transpose())},
          {"eigenvalues", Array(t.eigenvalues.transpose())},
          {"n_samples", t.n_samples}};
}

TiltResult TiltFromJson(const Json& j) {
  const std::string w = "tilt";
  CheckObject(j, w, {"pitch_rad", "roll_rad", "pitch_deg", "roll_deg", "v_max", "eigenvalues",
                     "n_samples"});
  TiltResult t;
  // Radians are authoritative; degree-only files are accepted too.
  t.pitch = j.contains("pitch_rad") ? Num(j, "pitch_rad", w) : DegToRad(Num(j, "pitch_deg", w));
  t.roll = j.contains("roll_rad") ? Num(j, "roll_rad", w) : DegToRad(Num(j, "roll_deg", w));
  if (j.contains("v_max")) t.v_max = Vec<3>(j, "v_max", w);
  if (j.contains("eigenvalues")) t.eigenvalues = Vec<3>(j, "eigenvalues", w);
  if (j.contains("n_samples")) t.n_samples = At(j, "n_samples", w).get<std::size_t>();
  return t;
}

Json ExtrinsicsToJson(const ExtrinsicParams& x) {
  return {{"p_F_O", Array(x.p_F_O.transpose())},
          {"theta_F_O_deg", RadToDeg(x.theta_F_O)},
          {"q_x", x.q_x},
          {"q_y", x.q_y}};
}

ExtrinsicParams ExtrinsicsFromJson(const Json& j) {
  return ExtrinsicsFromJsonImpl(j, "extrinsics");
}

Json SolveReportToJson(const SolveReport& r) {
  const auto& x = r.x_star;
  Json j;
  j["x_star"] = {{"p_F_O", Array(x.p_F_O.transpose())},
                 {"theta_F_O_rad", x.theta_F_O},
                 {"q_x", x.q_x},
                 {"q_y", x.q_y}};
  j["display_units"] = {{"p_Fx_m", x.p_F_O.x()},
                      {"p_Fy_m", x.p_F_O.y()},
                      {"theta_F_O_deg", RadToDeg(x.theta_F_O)},
                      {"s_x_inv_percent", 100.0 * x.q_x},
                      {"s_y_inv_percent", 100.0 * x.q_y}};
  j["final_cost"] = r.final_cost;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["residual_rms"] = r.residual_rms;
  j["covariance"] = Array(r.covariance_estimate);
  j["cost_history"] = r.cost_history;
  return j;
}

SolveReport SolveReportFromJson(const Json& j) {
  const std::string w = "extrinsics";
  CheckObject(j, w, {"x_star", "display_units", "final_cost", "iterations", "converged",
                     "residual_rms", "covariance", "cost_history"});
  SolveReport r;
  const Json& xs = At(j, "x_star", w);
  CheckObject(xs, w + ".x_star", {"p_F_O", "theta_F_O_rad", "q_x", "q_y"});
  r.x_star.p_F_O = Vec<2>(xs, "p_F_O", w + ".x_star");
  r.x_star.theta_F_O = Num(xs, "theta_F_O_rad", w + ".x_star");
  r.x_star.q_x = Num(xs, "q_x", w + ".x_star");
  r.x_star.q_y = Num(xs, "q_y", w + ".x_star");
  r.final_cost = Num(j, "final_cost", w);
  r.iterations = At(j, "iterations", w).get<int>();
  r.converged = At(j, "converged", w).get<bool>();
  r.residual_rms = Num(j, "residual_rms", w);
  const Eigen::Matrix<double, 25, 1> cov = Vec<25>(j, "covariance", w);
  r.covariance_estimate = Eigen::Map<const Eigen::Matrix<double, 5, 5, Eigen::RowMajor>>(cov.data());
  r.cost_history = At(j, "cost_history", w).get<std::vector<double>>();
  return r;
}

Json AllanFitToJson(const AllanFit& f) {
  return {{"white_noise_density", f.white_noise_density},
          {"bias_instability", f.bias_instability},
          {"tau_at_minimum", f.tau_at_minimum}};
}

AllanFit AllanFitFromJson(const Json& j) {
  CheckObject(j, "allan", {"white_noise_density", "bias_instability", "tau_at_minimum"});
  return {Num(j, "white_noise_density", "allan"), Num(j, "bias_instability", "allan"),
          Num(j, "tau_at_minimum", "allan")};
}

Json ScenarioToJson(const ScenarioSpec& s) {
  Json script = Json::array();
  for (const auto& seg : s.motion_script) {
    script.push_back({{"type", SegmentName(seg.type)},
                      {"duration", seg.duration},
                      {"ramp", seg.ramp},
                      {"speed", seg.speed},
                      {"direction_deg", RadToDeg(seg.direction)},
                      {"curvature", seg.curvature},
                      {"heading_locked", seg.heading_locked},
                      {"omega_deg_s", RadToDeg(seg.omega)}});
  }
  Json imu = ImuIntrinsicsToJson(s.imu);
  imu["noise"] = ImuNoiseToJson(s.imu_noise);
  Json j;
  j["name"] = s.name;
  j["duration"] = s.duration;
  j["sample_rate_imu"] = s.sample_rate_imu;
  j["sample_rate_odom"] = s.sample_rate_odom;
  j["seed"] = s.seed;
  j["motion_script"] = script;
  j["mounting"] = {{"p_F_O", Array(s.mounting.p_F_O.transpose())},
                   {"theta_F_O_deg", RadToDeg(s.mounting.theta_F_O)},
                   {"pitch_deg", RadToDeg(s.mounting.pitch)},
                   {"roll_deg", RadToDeg(s.mounting.roll)},
                   {"p_Bz_O", s.mounting.p_Bz_O}};
  j["imu"] = imu;
  j["chassis_scale"] = {s.chassis_scale.s_x, s.chassis_scale.s_y, s.chassis_scale.s_z};
  j["velocity_noise_std"] = Array(s.velocity_noise_std.transpose());
  j["vio_noise"] = {{"position_std", s.vio_noise.position_std},
                    {"yaw_std_deg", RadToDeg(s.vio_noise.yaw_std)},
                    {"drift_rate", s.vio_noise.drift_rate}};
  return j;
}

ScenarioSpec ScenarioFromJson(const Json& j) {
  const std::string w = "scenario";
  CheckObject(j, w, {"name", "duration", "sample_rate_imu", "sample_rate_odom", "seed",
                     "motion_script", "mounting", "imu", "chassis_scale", "velocity_noise_std",
                     "vio_noise"});
  ScenarioSpec s;
  s.name = j.contains("name") ? Str(j, "name", w) : "custom";
  s.duration = Num(j, "duration", w);
  s.sample_rate_imu = NumOr(j, "sample_rate_imu", s.sample_rate_imu, w);
  s.sample_rate_odom = NumOr(j, "sample_rate_odom", s.sample_rate_odom, w);
  if (j.contains("seed")) {
    const Json& v = j["seed"];
    if (!v.is_number_unsigned()) Fail(w + ".seed", "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  const Json& script = At(j, "motion_script", w);
  if (!script.is_array()) Fail(w + ".motion_script", "expected an array");
  for (std::size_t i = 0; i < script.size(); ++i) {
    const std::string sw = w + ".motion_script[" + std::to_string(i) + "]";
    const Json& b = script[i];
    CheckObject(b, sw, {"type", "duration", "ramp", "speed", "direction_deg", "curvature",
                        "heading_locked", "omega_deg_s"});
    MotionSegment seg;
    seg.type = SegmentFromName(Str(b, "type", sw), sw);
    seg.duration = Num(b, "duration", sw);
    seg.ramp = NumOr(b, "ramp", seg.ramp, sw);
    seg.speed = NumOr(b, "speed", 0.0, sw);
    seg.direction = DegToRad(NumOr(b, "direction_deg", 0.0, sw));
    seg.curvature = NumOr(b, "curvature", 0.0, sw);
    if (b.contains("heading_locked")) seg.heading_locked = b["heading_locked"].get<bool>();
    seg.omega = DegToRad(NumOr(b, "omega_deg_s", 0.0, sw));
    s.motion_script.push_back(seg);
  }
  if (j.contains("mounting")) {
    const Json& b = j["mounting"];
    const std::string mw = w + ".mounting";
    CheckObject(b, mw, {"p_F_O", "theta_F_O_deg", "pitch_deg", "roll_deg", "p_Bz_O"});
    s.mounting.p_F_O = Vec<2>(b, "p_F_O", mw);
    s.mounting.theta_F_O = DegToRad(Num(b, "theta_F_O_deg", mw));
    s.mounting.pitch = DegToRad(Num(b, "pitch_deg", mw));
    s.mounting.roll = DegToRad(Num(b, "roll_deg", mw));
    s.mounting.p_Bz_O = Num(b, "p_Bz_O", mw);
  }
  if (j.contains("imu")) {
    const Json& b = j["imu"];
    CheckObject(b, w + ".imu", {"T_a", "K_a", "b_a", "T_g", "K_g", "b_g", "noise"});
    s.imu = ImuIntrinsicsFromJsonImpl(b, w + ".imu");
    if (b.contains("noise")) s.imu_noise = ImuNoiseFromJsonImpl(b["noise"], w + ".imu.noise");
  }
  if (j.contains("chassis_scale")) {
    const Eigen::Vector3d v = Vec<3>(j, "chassis_scale", w);
    s.chassis_scale = {v.x(), v.y(), v.z()};
  }
  if (j.contains("velocity_noise_std")) {
    s.velocity_noise_std = Vec<3>(j, "velocity_noise_std", w);
  }
  if (j.contains("vio_noise")) {
    const Json& b = j["vio_noise"];
    const std::string vw = w + ".vio_noise";
    CheckObject(b, vw, {"position_std", "yaw_std_deg", "drift_rate"});
    s.vio_noise.position_std = NumOr(b, "position_std", 0.0, vw);
    s.vio_noise.yaw_std = DegToRad(NumOr(b, "yaw_std_deg", 0.0, vw));
    s.vio_noise.drift_rate = NumOr(b, "drift_rate", 0.0, vw);
  }
  return s;
}

Json TruthToJson(const Truth& t, const ScenarioSpec& spec) {
  const Eigen::Matrix4d T_W_V = [&] {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = t.T_W_V.rot.matrix();
    m.topRightCorner<3, 1>() = t.T_W_V.p;
    return m;
  }();
  return {{"scenario", ScenarioToJson(spec)},
          {"extrinsics", ExtrinsicsToJson(t.extrinsics)},
          {"tilt", {{"pitch_deg", RadToDeg(t.mounting.pitch)},
                    {"roll_deg", RadToDeg(t.mounting.roll)}}},
          {"p_Bz_O", t.mounting.p_Bz_O},
          {"chassis_scale", {t.chassis_scale.s_x, t.chassis_scale.s_y, t.chassis_scale.s_z}},
          {"T_W_V", Array(T_W_V)}};
}

Json ReportToJson(const CalibrationReport& r) {
  return {{"tilt", TiltToJson(r.tilt)},
          {"extrinsics", SolveReportToJson(r.extrinsics)},
          {"provenance", {{"inputs", r.provenance.inputs},
                          {"seed", r.provenance.seed},
                          {"tool_version", r.provenance.tool_version},
                          {"data_t_begin", r.provenance.data_t_begin},
                          {"data_t_end", r.provenance.data_t_end}}}};
}

CalibrationReport ReportFromJson(const Json& j) {
  CheckObject(j, "report", {"tilt", "extrinsics", "provenance"});
  CalibrationReport r;
  r.tilt = TiltFromJson(At(j, "tilt", "report"));
  r.extrinsics = SolveReportFromJson(At(j, "extrinsics", "report"));
  const Json& p = At(j, "provenance", "report");
  CheckObject(p, "provenance", {"inputs", "seed", "tool_version", "data_t_begin", "data_t_end"});
  r.provenance.inputs = At(p, "inputs", "provenance").get<std::vector<std::string>>();
  r.provenance.seed = At(p, "seed", "provenance").get<std::uint64_t>();
  r.provenance.tool_version = Str(p, "tool_version", "provenance");
  r.provenance.data_t_begin = Num(p, "data_t_begin", "provenance");
  r.provenance.data_t_end = Num(p, "data_t_end", "provenance");
  return r;
}

std::string DumpJson(const Json& j) { return j.dump(2) + "\n"; }

Json ParseJson(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw CalibError(ErrorCode::kParseError, source + ": " + e.what());
  }
}

}  // namespace chassis_calib
