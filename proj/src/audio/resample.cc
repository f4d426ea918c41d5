// src/audio/resample.cc

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
#include <numbers>

#include "s2t/audio.h"
#include "s2t/error.h"

namespace s2t {
namespace {

// Window-sinc h(x) = sinc(pi x) * kaiser(x / zero_crossings), tabulated on
// x in [0, zero_crossings] at kTableDensity points per zero crossing and
// linearly interpolated.
constexpr int kTableDensity = 1024;

std::vector<double> BuildSincTable(const ResamplerConfig &cfg) {
  const int size = cfg.zero_crossings * kTableDensity + 1;
  std::vector<double> table(size + 1, 0.0);
  const double inv_i0 = 1.0 / std::cyl_bessel_i(0.0, cfg.kaiser_beta);
  for (int i = 0; i < size; ++i) {
    const double x = static_cast<double>(i) / kTableDensity;
    const double r = x / cfg.zero_crossings;
    const double window =
        std::cyl_bessel_i(0.0, cfg.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) *
        inv_i0;
    const double px = std::numbers::pi * x;
    table[i] = (i == 0 ? 1.0 : std::sin(px) / px) * window;
  }
  return table;
}

const std::vector<double> &SincTable(const ResamplerConfig &cfg) {
  static const ResamplerConfig kDefault;
  static const std::vector<double> kDefaultTable = BuildSincTable(kDefault);
  if (cfg.kaiser_beta == kDefault.kaiser_beta &&
      cfg.zero_crossings == kDefault.zero_crossings)
    return kDefaultTable;
  thread_local ResamplerConfig cached_cfg{0.0, 0};
  thread_local std::vector<double> cached;
  if (cached_cfg.kaiser_beta != cfg.kaiser_beta ||
      cached_cfg.zero_crossings != cfg.zero_crossings) {
    cached = BuildSincTable(cfg);
    cached_cfg = cfg;
  }
  return cached;
}

struct SincKernel {
  double cutoff;      // fraction of the input Nyquist
  double half_width;  // in input samples
  double zero_crossings;
  const std::vector<double> *table;

  SincKernel(double step, const ResamplerConfig &cfg)
      : cutoff(step > 1.0 ? 1.0 / step : 1.0),
        half_width(cfg.zero_crossings / cutoff),
        zero_crossings(cfg.zero_crossings),
        table(&SincTable(cfg)) {}

  double operator()(double u) const {
    const double x = std::abs(u) * cutoff;
    if (x >= zero_crossings) return 0.0;
    const double pos = x * kTableDensity;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    const double h = (*table)[i] + frac * ((*table)[i + 1] - (*table)[i]);
    return cutoff * h;
  }
};

// One output sample; shared by both kernels so they agree bit for bit.
inline float InterpolateAt(std::span<const float> in, const SincKernel &k,
                           double t) {
  const auto n = static_cast<std::int64_t>(in.size());
  std::int64_t lo = static_cast<std::int64_t>(std::ceil(t - k.half_width));
  std::int64_t hi = static_cast<std::int64_t>(std::floor(t + k.half_width));
  if (lo < 0) lo = 0;
  if (hi > n - 1) hi = n - 1;
  double acc = 0.0;
  for (std::int64_t i = lo; i <= hi; ++i)
    acc += static_cast<double>(in[i]) * k(t - static_cast<double>(i));
  return static_cast<float>(acc);
}

void CheckStep(double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::kInvalidArgument, "resampling step must be > 0");
}

}  // namespace

std::vector<float> ResampleByStepSerial(std::span<const float> input,
                                        double step, std::size_t out_len,
                                        const ResamplerConfig &cfg) {
  CheckStep(step);
  const SincKernel kernel(step, cfg);
  std::vector<float> out(out_len);
  for (std::size_t j = 0; j < out_len; ++j)
    out[j] = InterpolateAt(input, kernel, static_cast<double>(j) * step);
  return out;
}

std::vector<float> ResampleByStep(std::span<const float> input, double step,
                                  std::size_t out_len,
                                  const ResamplerConfig &cfg) {
  CheckStep(step);
  const SincKernel kernel(step, cfg);
  std::vector<float> out(out_len);
  const auto len = static_cast<std::int64_t>(out_len);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < len; ++j)
    out[j] = InterpolateAt(input, kernel, static_cast<double>(j) * step);
  return out;
}

}  // namespace s2t
