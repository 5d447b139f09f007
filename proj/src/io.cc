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

#include "chassis_calib/io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include <Eigen/Geometry>

#include "chassis_calib/error.h"

namespace chassis_calib {

namespace {

constexpr std::string_view kImuHeader = "t,gx,gy,gz,ax,ay,az";

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void ParseFail(const std::string& source, std::size_t line, const std::string& why) {
  throw CalibError(ErrorCode::kParseError,
                   source + ":" + std::to_string(line) + ": " + why);
}

bool ParseNumber(std::string_view tok, double& out) {
  tok = Trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

// Splits on `sep`; a space separator also collapses runs of whitespace.
template <std::size_t N>
bool SplitFields(std::string_view line, char sep, std::array<double, N>& out) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    if (sep == ' ') {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos == line.size()) break;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != sep && !(sep == ' ' && line[end] == '\t')) ++end;
    if (count == N || !ParseNumber(line.substr(pos, end - pos), out[count])) return false;
    ++count;
    pos = end + 1;
  }
  return count == N;
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CalibError(ErrorCode::kParseError, "cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string FormatDouble(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw CalibError(ErrorCode::kInvalidInput, "number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CalibError(ErrorCode::kInvalidInput, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw CalibError(ErrorCode::kInvalidInput, "write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CalibError(ErrorCode::kInvalidInput, "cannot rename onto '" + path + "'");
  }
}

std::vector<ImuSample> ParseImuCsv(std::istream& in, const std::string& source) {
  std::vector<ImuSample> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = Trim(line);
    if (!header_seen) {
      if (body != kImuHeader) ParseFail(source, lineno, "expected header '" + std::string(kImuHeader) + "'");
      header_seen = true;
      continue;
    }
    if (body.empty()) continue;
    std::array<double, 7> f{};
    if (!SplitFields(body, ',', f)) ParseFail(source, lineno, "expected 7 numeric fields");
    ImuSample s;
    s.t = f[0];
    s.gyro = {f[1], f[2], f[3]};
    s.accel = {f[4], f[5], f[6]};
    out.push_back(s);
  }
  if (!header_seen) ParseFail(source, 1, "empty file");
  return out;
}

void FormatImuCsv(std::ostream& out, std::span<const ImuSample> samples) {
  out << kImuHeader << '\n';
  for (const auto& s : samples) {
    out << FormatDouble(s.t);
    for (int i = 0; i < 3; ++i) out << ',' << FormatDouble(s.gyro[i]);
    for (int i = 0; i < 3; ++i) out << ',' << FormatDouble(s.accel[i]);
    out << '\n';
  }
}

std::vector<ImuSample> ReadImuCsv(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ParseImuCsv(in, path);
}

void WriteImuCsv(const std::string& path, std::span<const ImuSample> samples) {
  std::ostringstream ss;
  FormatImuCsv(ss, samples);
  WriteFileAtomic(path, ss.str());
}

std::vector<TimedPose3> ParseTum(std::istream& in, const std::string& source) {
  std::vector<TimedPose3> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::array<double, 8> f{};
    if (!SplitFields(body, ' ', f)) ParseFail(source, lineno, "expected 8 numeric fields");
    Eigen::Quaterniond q(f[7], f[4], f[5], f[6]);
    const double n = q.norm();
    if (std::abs(n - 1.0) > 1e-3) ParseFail(source, lineno, "quaternion is not unit length");
    q.coeffs() /= n;
    out.push_back({f[0], Pose3{Rot3::FromMatrix(q.toRotationMatrix()),
                               Eigen::Vector3d(f[1], f[2], f[3])}});
  }
  return out;
}

void FormatTum(std::ostream& out, std::span<const TimedPose3> poses) {
  for (const auto& tp : poses) {
    Eigen::Quaterniond q(tp.pose.rot.matrix());
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    out << FormatDouble(tp.t);
    for (int i = 0; i < 3; ++i) out << ' ' << FormatDouble(tp.pose.p[i]);
    out << ' ' << FormatDouble(q.x()) << ' ' << FormatDouble(q.y()) << ' '
        << FormatDouble(q.z()) << ' ' << FormatDouble(q.w()) << '\n';
  }
}

std::vector<TimedPose3> ReadTum(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ParseTum(in, path);
}

void WriteTum(const std::string& path, std::span<const TimedPose3> poses) {
  std::ostringstream ss;
  ss << "# t x y z qx qy qz qw\n";
  FormatTum(ss, poses);
  WriteFileAtomic(path, ss.str());
}

Pose3 LiftPose2(const Pose2& p) {
  return {RotZ(p.yaw()), Eigen::Vector3d(p.p.x(), p.p.y(), 0.0)};
}

Pose2 ProjectPose3(const Pose3& p) {
  const Eigen::Matrix3d& R = p.rot.matrix();
  return {Rot2{std::atan2(R(1, 0), R(0, 0))}, p.p.head<2>()};
}

std::vector<TimedPose3> LiftPath(std::span<const TimedPose2> path) {
  std::vector<TimedPose3> out;
  out.reserve(path.size());
  for (const auto& tp : path) out.push_back({tp.t, LiftPose2(tp.pose)});
  return out;
}

std::vector<TimedPose2> ProjectPath(std::span<const TimedPose3> path) {
  std::vector<TimedPose2> out;
  out.reserve(path.size());
  for (const auto& tp : path) out.push_back({tp.t, ProjectPose3(tp.pose)});
  return out;
}

}  // namespace chassis_calib
