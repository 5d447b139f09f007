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

#include "chassis_calib/allan.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chassis_calib/error.h"
#include "chassis_calib/simd/kernels.h"

namespace chassis_calib {

namespace {

constexpr double kSlopeLow = -0.6;
constexpr double kSlopeHigh = -0.4;
constexpr std::size_t kMinWhiteRun = 5;

void CheckRate(double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw CalibError(ErrorCode::kInvalidInput, "sample_rate must be positive");
  }
}

}  // namespace

std::vector<double> DefaultTauGrid(std::size_t n_samples, double sample_rate) {
  CheckRate(sample_rate);
  std::vector<double> taus;
  const double m_max = static_cast<double>(n_samples) / 10.0;
  std::size_t last = 0;
  for (int j = 0;; ++j) {
    const double m_real = 2.0 * std::pow(10.0, j / 10.0);
    if (m_real > m_max * (1.0 + 1e-12)) break;
    const auto m = static_cast<std::size_t>(std::llround(m_real));
    if (m == last) continue;
    last = m;
    taus.push_back(static_cast<double>(m) / sample_rate);
  }
  return taus;
}

void CheckUniformSampling(std::span<const double> timestamps, double sample_rate) {
  CheckRate(sample_rate);
  const double dt = 1.0 / sample_rate;
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const double step = timestamps[i] - timestamps[i - 1];
    if (std::abs(step - dt) > 0.01 * dt) {
      std::ostringstream os;
      os << "step " << step << " s at index " << i << " vs nominal " << dt << " s";
      throw CalibError(ErrorCode::kNonUniformSampling, os.str());
    }
  }
}

std::vector<AllanPoint> AllanDeviation(std::span<const double> samples, double sample_rate,
                                       std::span<const double> taus) {
  CheckRate(sample_rate);
  const std::size_t n = samples.size();

  std::vector<std::size_t> ms;
  ms.reserve(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double m_real = taus[i] * sample_rate;
    const double m_round = std::round(m_real);
    if (!(m_round >= 1.0) || std::abs(m_real - m_round) > 1e-6 * std::max(1.0, m_real)) {
      throw CalibError(ErrorCode::kInvalidInput,
                       "tau is not a positive integer multiple of the sample period");
    }
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw CalibError(ErrorCode::kInvalidInput, "taus must be strictly ascending");
    }
    const auto m = static_cast<std::size_t>(m_round);
    if (n / m < kMinClusters) {
      std::ostringstream os;
      os << "tau = " << taus[i] << " s leaves " << n / m << " clusters (< "
         << kMinClusters << ")";
      throw CalibError(ErrorCode::kInsufficientData, os.str());
    }
    ms.push_back(m);
  }

  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);

  // Phase series theta_k = (1/rate) * sum_{j<k} (y_j - mean), k = 0..N.
  std::vector<double> theta(n + 1);
  theta[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += samples[k] - mean;
    theta[k + 1] = acc / sample_rate;
  }

  std::vector<AllanPoint> out;
  out.reserve(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::size_t m = ms[i];
    const double tau = static_cast<double>(m) / sample_rate;
    const std::size_t terms = theta.size() - 2 * m;
    const double sum = simd::SecondDiffSumSq(theta, m);
    const double avar = sum / (2.0 * static_cast<double>(terms) * tau * tau);
    out.push_back({tau, std::sqrt(avar), n / m});
  }
  return out;
}

AllanFit FitNoiseParams(std::span<const AllanPoint> curve) {
  if (curve.size() < kMinWhiteRun) {
    throw CalibError(ErrorCode::kInsufficientData, "Allan curve has too few points");
  }
  for (const auto& p : curve) {
    if (!(p.tau > 0.0) || !(p.adev > 0.0) || !std::isfinite(p.adev)) {
      throw CalibError(ErrorCode::kInvalidInput,
                       "Allan curve needs positive tau and adev for a log-log fit");
    }
  }
  const double decades = std::log10(curve.back().tau / curve.front().tau);
  if (decades < 3.0 - 1e-9) {
    throw CalibError(ErrorCode::kInsufficientData, "Allan curve spans fewer than 3 decades");
  }

  // Longest run of points whose adjacent log-log slopes sit around -1/2.
  std::size_t best_begin = 0, best_len = 0;
  std::size_t run_begin = 0, run_len = 1;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double slope = std::log(curve[i].adev / curve[i - 1].adev) /
                         std::log(curve[i].tau / curve[i - 1].tau);
    if (slope >= kSlopeLow && slope <= kSlopeHigh) {
      if (run_len == 1) run_begin = i - 1;
      ++run_len;
    } else {
      run_len = 1;
    }
    if (run_len > best_len) {
      best_len = run_len;
      best_begin = run_len == 1 ? i : run_begin;
    }
  }
  if (best_len < kMinWhiteRun) {
    throw CalibError(ErrorCode::kNoWhiteNoiseRegion,
                     "no run of >= 5 points with slope in [-0.6, -0.4]");
  }

  // Fixed slope -1/2: log adev = log N - 0.5 log tau.
  double intercept = 0.0;
  for (std::size_t i = best_begin; i < best_begin + best_len; ++i) {
    intercept += std::log(curve[i].adev) + 0.5 * std::log(curve[i].tau);
  }
  intercept /= static_cast<double>(best_len);

  const auto min_it = std::min_element(
      curve.begin(), curve.end(),
      [](const AllanPoint& a, const AllanPoint& b) { return a.adev < b.adev; });

  AllanFit fit;
  fit.white_noise_density = std::exp(intercept);
  fit.bias_instability = min_it->adev / kBiasInstabilityFactor;
  fit.tau_at_minimum = min_it->tau;
  return fit;
}

}  // namespace chassis_calib
