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

#include "chassis_calib/commands.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <sstream>
#include <vector>

#include "chassis_calib/allan.h"
#include "chassis_calib/config.h"
#include "chassis_calib/error.h"
#include "chassis_calib/io.h"
#include "chassis_calib/pca_calib.h"
#include "chassis_calib/sim.h"

namespace chassis_calib {

namespace {

namespace fs = std::filesystem;

int Guarded(const char* cmd, std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const CalibError& e) {
    err << cmd << ": " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Json::exception& e) {
    err << cmd << ": ParseError: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << cmd << ": internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw CalibError(ErrorCode::kInvalidInput, "cannot create directory '" + dir + "'");
  }
}

std::string Join(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

template <typename T>
const T& Need(const std::optional<T>& v, const char* block, const std::string& path) {
  if (!v) {
    throw CalibError(ErrorCode::kInvalidInput,
                     path + ": missing required '" + block + "' block");
  }
  return *v;
}

ScenarioSpec ResolveScenario(const std::string& name_or_file) {
  if (fs::is_regular_file(name_or_file)) {
    return ScenarioFromJson(ParseJson(ReadFile(name_or_file), name_or_file));
  }
  return StandardScenario(name_or_file);
}

constexpr const char* kAxisNames[] = {"gx", "gy", "gz", "ax", "ay", "az"};

int AxisIndex(const std::string& name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kAxisNames[i]) return i;
  }
  throw CalibError(ErrorCode::kInvalidInput, "unknown axis '" + name + "'");
}

double AxisValue(const ImuSample& s, int axis) {
  return axis < 3 ? s.gyro[axis] : s.accel[axis - 3];
}

}  // namespace

int CmdSimulate(const SimulateOptions& opt, std::ostream& err) {
  return Guarded("simulate", err, [&] {
    ScenarioSpec spec = ResolveScenario(opt.scenario);
    if (opt.seed) spec.seed = *opt.seed;
    const Dataset ds = Generate(spec);
    EnsureDir(opt.out_dir);
    WriteImuCsv(Join(opt.out_dir, "imu.csv"), ds.imu_stream);
    WriteTum(Join(opt.out_dir, "odom_path.tum"), LiftPath(ds.odom_path));
    WriteTum(Join(opt.out_dir, "vio_path.tum"), ds.vio_path);
    WriteFileAtomic(Join(opt.out_dir, "truth.json"), DumpJson(TruthToJson(ds.truth, spec)));
  });
}

int CmdAllan(const AllanOptions& opt, std::ostream& err) {
  return Guarded("allan", err, [&] {
    const std::vector<ImuSample> samples = ReadImuCsv(opt.imu_csv);
    if (samples.size() < 2) throw CalibError(ErrorCode::kInsufficientData, "too few samples");

    std::vector<int> axes;
    std::stringstream ss(opt.axes);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (!tok.empty()) axes.push_back(AxisIndex(tok));
    }
    if (axes.empty()) throw CalibError(ErrorCode::kInvalidInput, "no axes selected");

    std::vector<double> t(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) t[i] = samples[i].t;
    const double rate = opt.sample_rate.value_or(
        static_cast<double>(samples.size() - 1) / (t.back() - t.front()));
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw CalibError(ErrorCode::kInvalidInput, "sample rate must be positive");
    }
    CheckUniformSampling(t, rate);

    const std::vector<double> taus = DefaultTauGrid(samples.size(), rate);
    std::vector<std::vector<AllanPoint>> curves;
    Json fits = Json::object();
    std::vector<double> column(samples.size());
    for (int axis : axes) {
      for (std::size_t i = 0; i < samples.size(); ++i) column[i] = AxisValue(samples[i], axis);
      curves.push_back(AllanDeviation(column, rate, taus));
      fits[kAxisNames[axis]] = AllanFitToJson(FitNoiseParams(curves.back()));
    }

    EnsureDir(opt.out_dir);
    for (std::size_t a = 0; a < axes.size(); ++a) {
      std::ostringstream csv;
      csv << "tau,adev\n";
      for (const auto& p : curves[a]) {
        csv << FormatDouble(p.tau) << ',' << FormatDouble(p.adev) << '\n';
      }
      const std::string name = "allan_" + std::string(kAxisNames[axes[a]]) + ".csv";
      WriteFileAtomic((fs::path(opt.out_dir) / name).string(), csv.str());
    }
    WriteFileAtomic(Join(opt.out_dir, "allan_fit.json"),
                    DumpJson({{"sample_rate", rate}, {"axes", fits}}));
  });
}

int CmdTilt(const TiltOptions& opt, std::ostream& err) {
  return Guarded("tilt", err, [&] {
    const Config cfg = LoadConfig(opt.config);
    const MountingConfig& mount = Need(cfg.mounting, "mounting", opt.config);
    std::vector<ImuSample> samples = ReadImuCsv(opt.imu_csv);
    if (cfg.imu && !opt.raw) {
      for (auto& s : samples) s.gyro = CorrectGyro(s.gyro, *cfg.imu);
    }
    TiltConfig tc;
    tc.prior_R_B_O = mount.PriorRot();
    if (cfg.tilt) {
      tc.min_rate = cfg.tilt->min_rate;
      tc.still_duration = cfg.tilt->still_duration;
    }
    const TiltResult result = CalibrateTilt(samples, tc);
    WriteFileAtomic(opt.out, DumpJson(TiltToJson(result)));
  });
}

int CmdExtrinsics(const ExtrinsicsOptions& opt, std::ostream& err) {
  return Guarded("extrinsics", err, [&] {
    const Config cfg = LoadConfig(opt.config);
    const MountingConfig& mount = Need(cfg.mounting, "mounting", opt.config);

    TiltResult tilt;
    if (!opt.zero_tilt) {
      if (opt.tilt_json.empty()) {
        throw CalibError(ErrorCode::kInvalidInput, "a tilt result or --zero-tilt is required");
      }
      tilt = TiltFromJson(ParseJson(ReadFile(opt.tilt_json), opt.tilt_json));
    }

    SolverBlock block = cfg.solver.value_or(SolverBlock{});
    // Without an explicit x0 the heading starts from the mounting prior.
    if (!block.x0_given) block.solver.x0.theta_F_O = WrapAngle(mount.prior_ypr.yaw);
    if (opt.interval) block.interval = *opt.interval;
    if (opt.loss) block.solver.loss = *opt.loss;
    if (opt.max_iterations) block.solver.max_iterations = *opt.max_iterations;

    const std::vector<TimedPose3> vio = ReadTum(opt.vio_tum);
    const std::vector<TimedPose2> odom = ProjectPath(ReadTum(opt.odom_tum));
    if (vio.empty() || odom.empty()) {
      throw CalibError(ErrorCode::kInsufficientData, "empty trajectory file");
    }
    const std::vector<TimedPose2> path_F = VioPathToF(vio, tilt, mount.p_Bz_O);
    const std::vector<RelativePosePair> pairs = BuildPosePairs(path_F, odom, block.interval);
    const SolveReport report = Solve(pairs, block.solver);

    CalibrationReport full;
    full.tilt = tilt;
    full.extrinsics = report;
    full.provenance.inputs = {opt.vio_tum, opt.odom_tum, opt.config};
    if (!opt.zero_tilt) full.provenance.inputs.push_back(opt.tilt_json);
    full.provenance.tool_version = kToolVersion;
    full.provenance.data_t_begin = pairs.front().t_start;
    full.provenance.data_t_end = pairs.back().t_end;

    std::ostringstream csv;
    csv << "t_start,t_end,r_x,r_y,norm\n";
    for (const auto& p : pairs) {
      const Eigen::Vector2d r = Residual(report.x_star, p);
      csv << FormatDouble(p.t_start) << ',' << FormatDouble(p.t_end) << ','
          << FormatDouble(r.x()) << ',' << FormatDouble(r.y()) << ',' << FormatDouble(r.norm())
          << '\n';
    }
    EnsureDir(opt.out_dir);
    WriteFileAtomic(Join(opt.out_dir, "report.json"), DumpJson(ReportToJson(full)));
    WriteFileAtomic(Join(opt.out_dir, "residuals.csv"), csv.str());
  });
}

int CmdApplyImu(const ApplyImuOptions& opt, std::ostream& err) {
  return Guarded("apply-imu", err, [&] {
    const Config cfg = LoadConfig(opt.config);
    const ImuIntrinsics& intr = Need(cfg.imu, "imu", opt.config);
    std::vector<ImuSample> samples = ReadImuCsv(opt.imu_csv);
    for (auto& s : samples) {
      s.gyro = CorrectGyro(s.gyro, intr);
      s.accel = CorrectAccel(s.accel, intr);
    }
    WriteImuCsv(opt.out_csv, samples);
  });
}

}  // namespace chassis_calib
