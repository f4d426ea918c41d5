// src/features/fft.cc

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

#include "s2t/fft.h"

#include <cmath>
#include <numbers>

#include "s2t/error.h"

namespace s2t {

int NextPowerOfTwo(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

Fft::Fft(int size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0)
    throw Error(ErrorCode::kInvalidArgument, "FFT size must be a power of two");
  int log2n = 0;
  while ((1 << log2n) < size) ++log2n;
  bitrev_.resize(size);
  for (int i = 0; i < size; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    bitrev_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (int k = 0; k < size / 2; ++k) {
    const double a = -2.0 * std::numbers::pi * k / size;
    twiddles_[k] = {std::cos(a), std::sin(a)};
  }
}

void Fft::Forward(std::span<std::complex<double>> data) const {
  for (int i = 0; i < size_; ++i)
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  for (int len = 2; len <= size_; len <<= 1) {
    const int half = len / 2;
    const int stride = size_ / len;
    for (int start = 0; start < size_; start += len) {
      for (int k = 0; k < half; ++k) {
        const std::complex<double> t = twiddles_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

void Fft::PowerSpectrum(std::span<const double> frame,
                        std::span<std::complex<double>> scratch,
                        std::span<double> power) const {
  for (int i = 0; i < size_; ++i) scratch[i] = {frame[i], 0.0};
  Forward(scratch);
  for (int k = 0; k <= size_ / 2; ++k) power[k] = std::norm(scratch[k]);
}

}  // namespace s2t
