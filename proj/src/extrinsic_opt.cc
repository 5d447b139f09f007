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

#include "chassis_calib/extrinsic_opt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "chassis_calib/error.h"

namespace chassis_calib {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kInitialLambda = 1e-4;
constexpr double kMaxLambda = 1e16;

struct NormalEquations {
  Matrix5d H = Matrix5d::Zero();
  Vector5d g = Vector5d::Zero();
  double cost = 0.0;
};

double LossWeight(double s, const SolverConfig& cfg) {
  if (cfg.loss == LossKind::kNone) return 1.0;
  const double d2 = cfg.huber_delta * cfg.huber_delta;
  return s <= d2 ? 1.0 : cfg.huber_delta / std::sqrt(s);
}

// Fixed-order accumulation so reports are reproducible.
NormalEquations Accumulate(const ExtrinsicParams& x, std::span<const RelativePosePair> pairs,
                           const SolverConfig& cfg) {
  NormalEquations ne;
  for (const auto& pair : pairs) {
    const Eigen::Vector2d r = Residual(x, pair);
    const Matrix25d J = Jacobian(x, pair);
    const double s = r.squaredNorm();
    const double w = LossWeight(s, cfg);
    ne.H.noalias() += w * J.transpose() * J;
    ne.g.noalias() += w * J.transpose() * r;
    ne.cost += Loss(s, cfg);
  }
  return ne;
}

double TotalCost(const ExtrinsicParams& x, std::span<const RelativePosePair> pairs,
                 const SolverConfig& cfg) {
  double cost = 0.0;
  for (const auto& pair : pairs) cost += Loss(Residual(x, pair).squaredNorm(), cfg);
  return cost;
}

Matrix5d UnweightedNormal(const ExtrinsicParams& x, std::span<const RelativePosePair> pairs) {
  Matrix5d H = Matrix5d::Zero();
  for (const auto& pair : pairs) {
    const Matrix25d J = Jacobian(x, pair);
    H.noalias() += J.transpose() * J;
  }
  return H;
}

double ConditionNumber(const Matrix5d& H) {
  Eigen::SelfAdjointEigenSolver<Matrix5d> es(H, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()[0];
  const double hi = es.eigenvalues()[4];
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

void CheckConditioning(const Matrix5d& H, const char* where) {
  const double cond = ConditionNumber(H);
  if (cond > kMaxCondition) {
    std::ostringstream os;
    os << "J^T J condition number " << cond << " at " << where;
    throw CalibError(ErrorCode::kRankDeficient, os.str());
  }
}

}  // namespace

Vector5d ExtrinsicParams::ToVector() const {
  Vector5d v;
  v << p_F_O.x(), p_F_O.y(), theta_F_O, q_x, q_y;
  return v;
}

ExtrinsicParams ExtrinsicParams::FromVector(const Vector5d& v) {
  ExtrinsicParams x;
  x.p_F_O = v.head<2>();
  x.theta_F_O = v[2];
  x.q_x = v[3];
  x.q_y = v[4];
  return x;
}

void ExtrinsicParams::Validate() const {
  if (!p_F_O.allFinite() || !std::isfinite(theta_F_O)) {
    throw CalibError(ErrorCode::kInvalidInput, "extrinsics must be finite");
  }
  if (!(q_x > 0.5 && q_x < 2.0) || !(q_y > 0.5 && q_y < 2.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "inverse scales must lie in (0.5, 2.0)");
  }
}

void SolverConfig::Validate() const {
  if (loss == LossKind::kHuber && !(huber_delta > 0.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "huber delta must be positive");
  }
  if (max_iterations <= 0) {
    throw CalibError(ErrorCode::kInvalidInput, "max_iterations must be positive");
  }
  if (!(gradient_tol > 0.0) || !(step_tol > 0.0)) {
    throw CalibError(ErrorCode::kInvalidInput, "tolerances must be positive");
  }
  x0.Validate();
}

std::vector<TimedPose2> VioPathToF(std::span<const TimedPose3> body_poses,
                                   const TiltResult& tilt, double p_Bz_O) {
  if (!std::isfinite(p_Bz_O)) {
    throw CalibError(ErrorCode::kInvalidInput, "p_Bz_O must be finite");
  }
  const Pose3 T_B_F{tilt.RotBF(), Eigen::Vector3d(0.0, 0.0, p_Bz_O)};
  const Pose3 T_F_B = Inverse(T_B_F);
  std::vector<TimedPose2> out;
  out.reserve(body_poses.size());
  for (const auto& tp : body_poses) {
    const Pose3 T_F_W = tp.pose * T_F_B;
    const double yaw = YprFromRot(T_F_W.rot).yaw;
    out.push_back({tp.t, Pose2{Rot2{yaw}, T_F_W.p.head<2>()}});
  }
  return out;
}

namespace {

void CheckMonotone(std::span<const TimedPose2> path, const char* name) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!(path[i].t > path[i - 1].t)) {
      throw CalibError(ErrorCode::kNonMonotoneTime,
                       std::string(name) + " timestamps must be strictly increasing");
    }
  }
}

const TimedPose2& Nearest(std::span<const TimedPose2> path, double t, double max_skew) {
  auto it = std::lower_bound(path.begin(), path.end(), t,
                             [](const TimedPose2& p, double v) { return p.t < v; });
  if (it == path.end()) {
    --it;
  } else if (it != path.begin() && std::abs(std::prev(it)->t - t) <= std::abs(it->t - t)) {
    --it;
  }
  if (std::abs(it->t - t) > max_skew) {
    std::ostringstream os;
    os << "nearest sample to t = " << t << " s is " << std::abs(it->t - t) << " s away";
    throw CalibError(ErrorCode::kTimeMisalignment, os.str());
  }
  return *it;
}

}  // namespace

std::vector<RelativePosePair> BuildPosePairs(std::span<const TimedPose2> path_F,
                                             std::span<const TimedPose2> path_O,
                                             double interval) {
  if (!(interval > 0.0)) throw CalibError(ErrorCode::kInvalidInput, "interval must be positive");
  if (path_F.empty() || path_O.empty()) {
    throw CalibError(ErrorCode::kEmptyOverlap, "empty path");
  }
  CheckMonotone(path_F, "VIO path");
  CheckMonotone(path_O, "odometry path");
  const double t0 = std::max(path_F.front().t, path_O.front().t);
  const double t1 = std::min(path_F.back().t, path_O.back().t);
  if (!(t1 - t0 >= 10.0 * interval)) {
    throw CalibError(ErrorCode::kEmptyOverlap, "paths share less than 10 intervals");
  }
  const double max_skew = interval / 10.0;
  const auto n_grid = static_cast<std::size_t>(std::floor((t1 - t0) / interval + 1e-9)) + 1;

  std::vector<RelativePosePair> pairs;
  pairs.reserve(n_grid - 1);
  const TimedPose2* prev_F = &Nearest(path_F, t0, max_skew);
  const TimedPose2* prev_O = &Nearest(path_O, t0, max_skew);
  for (std::size_t i = 1; i < n_grid; ++i) {
    const double t = t0 + static_cast<double>(i) * interval;
    const TimedPose2& cur_F = Nearest(path_F, t, max_skew);
    const TimedPose2& cur_O = Nearest(path_O, t, max_skew);
    RelativePosePair pair;
    pair.dp_F = prev_F->pose.rot.inverse() * (cur_F.pose.p - prev_F->pose.p);
    pair.dp_O = prev_O->pose.rot.inverse() * (cur_O.pose.p - prev_O->pose.p);
    pair.dtheta = WrapAngle(cur_O.pose.yaw() - prev_O->pose.yaw());
    pair.t_start = t - interval;
    pair.t_end = t;
    pairs.push_back(pair);
    prev_F = &cur_F;
    prev_O = &cur_O;
  }
  return pairs;
}

Eigen::Vector2d Residual(const ExtrinsicParams& x, const RelativePosePair& pair) {
  const Eigen::Vector2d scaled(x.q_x * pair.dp_O.x(), x.q_y * pair.dp_O.y());
  return x.p_F_O + Rot2{x.theta_F_O} * pair.dp_F - Rot2{pair.dtheta} * x.p_F_O - scaled;
}

Matrix25d Jacobian(const ExtrinsicParams& x, const RelativePosePair& pair) {
  Matrix25d J;
  J.block<2, 2>(0, 0) = Eigen::Matrix2d::Identity() - Rot2{pair.dtheta}.matrix();
  const Eigen::Vector2d rotated = Rot2{x.theta_F_O} * pair.dp_F;
  J.col(2) = Eigen::Vector2d(-rotated.y(), rotated.x());
  J.col(3) = Eigen::Vector2d(-pair.dp_O.x(), 0.0);
  J.col(4) = Eigen::Vector2d(0.0, -pair.dp_O.y());
  return J;
}

double Loss(double s, const SolverConfig& cfg) {
  if (cfg.loss == LossKind::kNone) return s;
  const double d = cfg.huber_delta;
  return s <= d * d ? s : 2.0 * d * std::sqrt(s) - d * d;
}

SolveReport Solve(std::span<const RelativePosePair> pairs, const SolverConfig& cfg) {
  cfg.Validate();
  if (pairs.size() < kMinPairs) {
    std::ostringstream os;
    os << pairs.size() << " pose pairs, need at least " << kMinPairs;
    throw CalibError(ErrorCode::kInsufficientData, os.str());
  }
  const bool excited = std::any_of(pairs.begin(), pairs.end(), [](const RelativePosePair& p) {
    return std::abs(p.dtheta) > kMinExcitation;
  });
  if (!excited) {
    throw CalibError(ErrorCode::kUnobservable,
                     "no pair rotates by more than 0.05 rad; lever arm is unobservable");
  }

  ExtrinsicParams x = cfg.x0;
  CheckConditioning(UnweightedNormal(x, pairs), "x0");

  SolveReport report;
  NormalEquations ne = Accumulate(x, pairs, cfg);
  report.cost_history.push_back(ne.cost);
  double lambda = kInitialLambda;

  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    if (ne.g.cwiseAbs().maxCoeff() < cfg.gradient_tol) {
      report.converged = true;
      break;
    }
    Matrix5d A = ne.H;
    A.diagonal() += lambda * ne.H.diagonal();
    const Vector5d step = A.ldlt().solve(-ne.g);
    if (!step.allFinite()) {
      throw CalibError(ErrorCode::kRankDeficient, "normal equations are singular");
    }
    const Vector5d xv = x.ToVector();
    if (step.norm() < cfg.step_tol * (xv.norm() + cfg.step_tol)) {
      report.converged = true;
      break;
    }
    ExtrinsicParams candidate = ExtrinsicParams::FromVector(xv + step);
    candidate.theta_F_O = WrapAngle(candidate.theta_F_O);
    const double new_cost = TotalCost(candidate, pairs, cfg);
    if (new_cost < ne.cost) {
      x = candidate;
      ne = Accumulate(x, pairs, cfg);
      report.cost_history.push_back(ne.cost);
      lambda = std::max(lambda / 3.0, 1e-12);
    } else {
      lambda *= 4.0;
      if (lambda > kMaxLambda) {
        // No descent direction left at working precision.
        report.converged = true;
        break;
      }
    }
  }
  if (!report.converged) {
    std::ostringstream os;
    os << "no convergence after " << cfg.max_iterations << " iterations";
    throw CalibError(ErrorCode::kMaxIterations, os.str());
  }

  const Matrix5d H = UnweightedNormal(x, pairs);
  CheckConditioning(H, "solution");
  double sq = 0.0;
  for (const auto& pair : pairs) sq += Residual(x, pair).squaredNorm();
  const double dof = 2.0 * static_cast<double>(pairs.size()) - 5.0;

  report.x_star = x;
  report.final_cost = ne.cost;
  report.iterations = iter;
  report.residual_rms = std::sqrt(sq / static_cast<double>(pairs.size()));
  report.covariance_estimate = H.inverse() * (sq / dof);
  return report;
}

}  // namespace chassis_calib
