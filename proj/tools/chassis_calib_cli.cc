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

// chassis-calib: simulate sensor data and run the calibration chain.
//
//   chassis-calib simulate extrinsics-cal --out data --seed 7
//   chassis-calib allan data/imu.csv --out noise
//   chassis-calib tilt data/imu.csv --config config/bmi055.json --out tilt.json
//   chassis-calib extrinsics data/vio_path.tum data/odom_path.tum
//       --config config/bmi055.json --tilt tilt.json --out result
//   chassis-calib apply-imu data/imu.csv --config config/bmi055.json --out corrected.csv

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chassis_calib/commands.h"
#include "chassis_calib/extrinsic_opt.h"

namespace cc = chassis_calib;

int main(int argc, char** argv) {
  CLI::App app{"IMU, wheel-odometry and chassis calibration"};
  app.set_version_flag("--version", std::string(cc::kToolVersion));
  app.require_subcommand(1);

  cc::SimulateOptions sim;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("scenario", sim.scenario, "Standard scenario name or scenario JSON file")
      ->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Override the scenario seed");

  cc::AllanOptions allan;
  std::optional<double> allan_rate;
  auto* allan_cmd = app.add_subcommand("allan", "Allan deviation and noise fit");
  allan_cmd->add_option("imu_csv", allan.imu_csv)->required()->check(CLI::ExistingFile);
  allan_cmd->add_option("--axes", allan.axes, "Comma-separated subset of gx,gy,gz,ax,ay,az");
  allan_cmd->add_option("--rate", allan_rate, "Sample rate in Hz (default: from timestamps)");
  allan_cmd->add_option("--out", allan.out_dir, "Output directory")->required();

  cc::TiltOptions tilt;
  auto* tilt_cmd = app.add_subcommand("tilt", "Pitch and roll of the IMU from planar motion");
  tilt_cmd->add_option("imu_csv", tilt.imu_csv)->required()->check(CLI::ExistingFile);
  tilt_cmd->add_option("--config", tilt.config)->required()->check(CLI::ExistingFile);
  tilt_cmd->add_option("--out", tilt.out, "TiltResult JSON")->required();
  tilt_cmd->add_flag("--raw", tilt.raw, "Do not apply IMU intrinsics before the fit");

  cc::ExtrinsicsOptions ext;
  std::optional<double> ext_interval;
  std::optional<int> ext_iters;
  std::optional<cc::LossKind> ext_loss;
  const std::map<std::string, cc::LossKind> loss_names{{"huber", cc::LossKind::kHuber},
                                                       {"none", cc::LossKind::kNone}};
  auto* ext_cmd = app.add_subcommand("extrinsics", "Chassis-IMU planar extrinsics and scales");
  ext_cmd->add_option("vio_tum", ext.vio_tum)->required()->check(CLI::ExistingFile);
  ext_cmd->add_option("odom_tum", ext.odom_tum)->required()->check(CLI::ExistingFile);
  ext_cmd->add_option("--config", ext.config)->required()->check(CLI::ExistingFile);
  ext_cmd->add_option("--tilt", ext.tilt_json, "TiltResult JSON from the tilt step");
  ext_cmd->add_flag("--zero-tilt", ext.zero_tilt, "Assume the IMU is level");
  ext_cmd->add_option("--out", ext.out_dir, "Output directory")->required();
  ext_cmd->add_option("--interval", ext_interval, "Pair interval in seconds");
  ext_cmd->add_option("--loss", ext_loss, "huber or none")
      ->transform(CLI::CheckedTransformer(loss_names, CLI::ignore_case).description(""))
      ->type_name("huber|none");
  ext_cmd->add_option("--max-iters", ext_iters, "Iteration cap");

  cc::ApplyImuOptions apply;
  auto* apply_cmd = app.add_subcommand("apply-imu", "Correct a raw IMU stream");
  apply_cmd->add_option("imu_csv", apply.imu_csv)->required()->check(CLI::ExistingFile);
  apply_cmd->add_option("--config", apply.config)->required()->check(CLI::ExistingFile);
  apply_cmd->add_option("--out", apply.out_csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cc::kExitBadInput;
  }

  if (simulate->parsed()) {
    sim.seed = sim_seed;
    return cc::CmdSimulate(sim, std::cerr);
  }
  if (allan_cmd->parsed()) {
    allan.sample_rate = allan_rate;
    return cc::CmdAllan(allan, std::cerr);
  }
  if (tilt_cmd->parsed()) return cc::CmdTilt(tilt, std::cerr);
  if (ext_cmd->parsed()) {
    ext.interval = ext_interval;
    ext.max_iterations = ext_iters;
    ext.loss = ext_loss;
    return cc::CmdExtrinsics(ext, std::cerr);
  }
  if (apply_cmd->parsed()) return cc::CmdApplyImu(apply, std::cerr);
  return cc::kExitInternal;
}
