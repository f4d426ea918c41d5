// include/s2t/fft.h

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

#ifndef S2T_FFT_H_
#define S2T_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace s2t {

/// In-place iterative radix-2 FFT with precomputed twiddles. Immutable after
/// construction, so one instance can be shared by all worker threads.
class Fft {
 public:
  explicit Fft(int size);  // size must be a power of two

  int size() const { return size_; }

  void Forward(std::span<std::complex<double>> data) const;

  /// |X_k|^2 for k = 0..size/2 of a real frame. `scratch` must hold size
  /// elements; it is the caller's so that kernels can keep it per thread.
  void PowerSpectrum(std::span<const double> frame,
                     std::span<std::complex<double>> scratch,
                     std::span<double> power) const;

 private:
  int size_;
  std::vector<int> bitrev_;
  std::vector<std::complex<double>> twiddles_;
};

int NextPowerOfTwo(int n);

}  // namespace s2t

#endif  // S2T_FFT_H_
