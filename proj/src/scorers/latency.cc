// src/scorers/latency.cc

// Copyright 2026  The s2tkit Authors

// See the top-level LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "s2t/error.h"
#include "s2t/scorers.h"

namespace s2t {
namespace {

double Gamma(const DelaySequence &d) {
  if (d.delays.empty())
    throw Error(ErrorCode::kInvalidArgument, "latency of an empty target is undefined");
  if (!(d.src_len > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "source length must be positive");
  return static_cast<double>(d.delays.size()) / d.src_len;
}

}  // namespace

double AverageLagging(const DelaySequence &d) {
  const double gamma = Gamma(d);
  std::size_t tau = d.delays.size();
  for (std::size_t i = 0; i < d.delays.size(); ++i) {
    if (d.delays[i] >= d.src_len) {
      tau = i + 1;
      break;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < tau; ++i)
    sum += d.delays[i] - static_cast<double>(i) / gamma;
  return sum / static_cast<double>(tau);
}

double DifferentiableAverageLagging(const DelaySequence &d) {
  const double gamma = Gamma(d);
  double prev = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < d.delays.size(); ++i) {
    const double dp = i == 0 ? d.delays[0] : std::max(d.delays[i], prev + 1.0 / gamma);
    sum += dp - static_cast<double>(i) / gamma;
    prev = dp;
  }
  return sum / static_cast<double>(d.delays.size());
}

LatencyRegime RegimeForAl(double al) {
  if (al > 6.0) return LatencyRegime::kHigh;
  if (al > 3.0) return LatencyRegime::kMedium;
  return LatencyRegime::kLow;
}

std::string_view RegimeName(LatencyRegime r) {
  switch (r) {
    case LatencyRegime::kHigh: return "high";
    case LatencyRegime::kMedium: return "medium";
    case LatencyRegime::kLow: return "low";
  }
  return "low";
}

}  // namespace s2t
