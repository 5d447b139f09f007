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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chassis_calib/config.h"
#include "chassis_calib/io.h"
#include "chassis_calib/rng.h"
#include "chassis_calib/sim.h"

namespace chassis_calib {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("chassis_calib_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream err_;
};

int RunBinary(const std::string& args) {
  const std::string cmd = std::string(CHASSIS_CALIB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, SimulateIsByteIdentical) {
  ASSERT_EQ(CmdSimulate({"tilt-cal", Path("a"), std::nullopt}, err_), kExitOk) << err_.str();
  ASSERT_EQ(CmdSimulate({"tilt-cal", Path("b"), std::nullopt}, err_), kExitOk) << err_.str();
  for (const char* f : {"imu.csv", "odom_path.tum", "vio_path.tum", "truth.json"}) {
    const std::string a = ReadFile(Path(std::string("a/") + f));
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, ReadFile(Path(std::string("b/") + f))) << f;
  }
  ASSERT_EQ(CmdSimulate({"tilt-cal", Path("c"), 99}, err_), kExitOk);
  EXPECT_NE(ReadFile(Path("a/imu.csv")), ReadFile(Path("c/imu.csv")));
  const Json truth = ParseJson(ReadFile(Path("c/truth.json")), "truth");
  EXPECT_EQ(truth["scenario"]["seed"].get<std::uint64_t>(), 99U);
}

TEST_F(CliTest, SimulateFromScenarioFile) {
  ScenarioSpec spec = StandardScenario("tilt-cal");
  spec.name = "from-file";
  WriteFileAtomic(Path("s.json"), DumpJson(ScenarioToJson(spec)));
  ASSERT_EQ(CmdSimulate({Path("s.json"), Path("out"), std::nullopt}, err_), kExitOk)
      << err_.str();
  EXPECT_EQ(ReadImuCsv(Path("out/imu.csv")).size(), 44U * 200U);
}

TEST_F(CliTest, SimulateRejectsUnknownScenario) {
  EXPECT_EQ(CmdSimulate({"no-such-scenario", Path("x"), std::nullopt}, err_), kExitBadInput);
  EXPECT_FALSE(err_.str().empty());
  WriteFileAtomic(Path("bad.json"), R"({"name": "x", "duration": -1})");
  EXPECT_EQ(CmdSimulate({Path("bad.json"), Path("y"), std::nullopt}, err_), kExitBadInput);
}

std::vector<ImuSample> SomeSamples() {
  Rng rng(5);
  std::vector<ImuSample> s;
  for (int i = 0; i < 300; ++i) {
    s.push_back({0.005 * i, 0.3 * rng.Normal3(), Eigen::Vector3d(0, 0, 9.8) + rng.Normal3()});
  }
  return s;
}

TEST_F(CliTest, ApplyImuIdentityIsNoOp) {
  WriteImuCsv(Path("in.csv"), SomeSamples());
  Config cfg;
  cfg.imu = ImuIntrinsics::Identity();
  WriteFileAtomic(Path("id.json"), DumpJson(ConfigToJson(cfg)));
  ASSERT_EQ(CmdApplyImu({Path("in.csv"), Path("id.json"), Path("out.csv")}, err_), kExitOk)
      << err_.str();
  EXPECT_EQ(ReadFile(Path("out.csv")), ReadFile(Path("in.csv")));
}

TEST_F(CliTest, ApplyImuMatchesLibraryCorrection) {
  const auto in = SomeSamples();
  WriteImuCsv(Path("in.csv"), in);
  const std::string config = CHASSIS_CALIB_SOURCE_DIR "/config/bmi055.json";
  ASSERT_EQ(CmdApplyImu({Path("in.csv"), config, Path("out.csv")}, err_), kExitOk)
      << err_.str();
  const auto out = ReadImuCsv(Path("out.csv"));
  const ImuIntrinsics intr = *LoadConfig(config).imu;
  ASSERT_EQ(out.size(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(out[i].gyro, CorrectGyro(in[i].gyro, intr));
    EXPECT_EQ(out[i].accel, CorrectAccel(in[i].accel, intr));
  }
}

TEST_F(CliTest, MalformedCsvReportsLine) {
  WriteFileAtomic(Path("bad.csv"), "t,gx,gy,gz,ax,ay,az\n0,0,0,0,0,0,0\n0.1,0,0,0,0,0,zz\n");
  const std::string config = CHASSIS_CALIB_SOURCE_DIR "/config/bmi055.json";
  EXPECT_EQ(CmdApplyImu({Path("bad.csv"), config, Path("o.csv")}, err_), kExitBadInput);
  EXPECT_NE(err_.str().find("bad.csv:3"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(Path("o.csv")));
}

TEST_F(CliTest, MissingConfigBlocks) {
  WriteImuCsv(Path("in.csv"), SomeSamples());
  WriteFileAtomic(Path("empty.json"), "{}");
  EXPECT_EQ(CmdApplyImu({Path("in.csv"), Path("empty.json"), Path("o.csv")}, err_),
            kExitBadInput);
  EXPECT_EQ(CmdTilt({Path("in.csv"), Path("empty.json"), Path("t.json"), false}, err_),
            kExitBadInput);
  EXPECT_EQ(CmdApplyImu({Path("missing.csv"), Path("empty.json"), Path("o.csv")}, err_),
            kExitBadInput);
}

TEST_F(CliTest, SimulateTiltExtrinsicsPipeline) {
  ASSERT_EQ(CmdSimulate({"extrinsics-cal", Path("sim"), std::nullopt}, err_), kExitOk);
  const std::string config = CHASSIS_CALIB_SOURCE_DIR "/config/bmi055.json";
  ASSERT_EQ(CmdTilt({Path("sim/imu.csv"), config, Path("tilt.json"), false}, err_), kExitOk)
      << err_.str();
  const ScenarioSpec spec = StandardScenario("extrinsics-cal");
  const TiltResult tilt = TiltFromJson(ParseJson(ReadFile(Path("tilt.json")), "tilt"));
  EXPECT_NEAR(RadToDeg(tilt.pitch - spec.mounting.pitch), 0.0, 0.2);
  EXPECT_NEAR(RadToDeg(tilt.roll - spec.mounting.roll), 0.0, 0.2);

  ExtrinsicsOptions ex;
  ex.vio_tum = Path("sim/vio_path.tum");
  ex.odom_tum = Path("sim/odom_path.tum");
  ex.config = config;
  ex.tilt_json = Path("tilt.json");
  ex.out_dir = Path("calib");
  ASSERT_EQ(CmdExtrinsics(ex, err_), kExitOk) << err_.str();
  const CalibrationReport rep = ReportFromJson(ParseJson(ReadFile(Path("calib/report.json")), "r"));
  const ExtrinsicParams truth = spec.TrueExtrinsics();
  EXPECT_LT((rep.extrinsics.x_star.p_F_O - truth.p_F_O).norm(), 0.01);
  EXPECT_NEAR(RadToDeg(rep.extrinsics.x_star.theta_F_O - truth.theta_F_O), 0.0, 0.3);
  EXPECT_NEAR(rep.extrinsics.x_star.q_x, truth.q_x, 0.02);
  EXPECT_NEAR(rep.extrinsics.x_star.q_y, truth.q_y, 0.02);
  EXPECT_EQ(rep.provenance.tool_version, kToolVersion);
  const std::string residuals = ReadFile(Path("calib/residuals.csv"));
  EXPECT_EQ(residuals.rfind("t_start,t_end,r_x,r_y,norm\n", 0), 0U);

  // Same inputs, same report.
  const std::string first = ReadFile(Path("calib/report.json"));
  ASSERT_EQ(CmdExtrinsics(ex, err_), kExitOk);
  EXPECT_EQ(ReadFile(Path("calib/report.json")), first);

  ex.tilt_json.clear();
  EXPECT_EQ(CmdExtrinsics(ex, err_), kExitBadInput);
  ex.zero_tilt = true;
  ex.loss = LossKind::kNone;
  ex.interval = 1.0;
  EXPECT_EQ(CmdExtrinsics(ex, err_), kExitOk) << err_.str();
}

TEST_F(CliTest, AllanWritesPerAxisCurves) {
  Rng rng(8);
  std::vector<ImuSample> s;
  for (int i = 0; i < 30000; ++i) {
    s.push_back({0.01 * i, 0.01 * rng.Normal3(), Eigen::Vector3d(0, 0, 9.8) + 0.02 * rng.Normal3()});
  }
  WriteImuCsv(Path("still.csv"), s);
  AllanOptions opt;
  opt.imu_csv = Path("still.csv");
  opt.axes = "gx,az";
  opt.out_dir = Path("allan");
  ASSERT_EQ(CmdAllan(opt, err_), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(Path("allan/allan_gx.csv")));
  EXPECT_TRUE(fs::exists(Path("allan/allan_az.csv")));
  EXPECT_FALSE(fs::exists(Path("allan/allan_gy.csv")));
  EXPECT_EQ(ReadFile(Path("allan/allan_gx.csv")).rfind("tau,adev\n", 0), 0U);
  const Json fit = ParseJson(ReadFile(Path("allan/allan_fit.json")), "fit");
  EXPECT_DOUBLE_EQ(fit["sample_rate"].get<double>(), 100.0);
  // sigma / sqrt(rate) is the white density.
  const AllanFit gx = AllanFitFromJson(fit["axes"]["gx"]);
  EXPECT_NEAR(gx.white_noise_density, 0.01 / std::sqrt(100.0), 0.1 * 0.001);

  opt.axes = "gx,wz";
  EXPECT_EQ(CmdAllan(opt, err_), kExitBadInput);
  opt.axes = "gx";
  opt.sample_rate = 50.0;
  EXPECT_EQ(CmdAllan(opt, err_), kExitBadInput);  // contradicts timestamps
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(RunBinary("--help"), 0);
  EXPECT_EQ(RunBinary("bogus-command"), 2);
  EXPECT_EQ(RunBinary("extrinsics a.tum b.tum --loss cauchy"), 2);
  EXPECT_EQ(RunBinary("simulate no-such-scenario --out /tmp/chassis_calib_cli_nowhere"), 2);
}

}  // namespace
}  // namespace chassis_calib
