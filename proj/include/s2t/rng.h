// include/s2t/rng.h

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

#ifndef S2T_RNG_H_
#define S2T_RNG_H_

#include <cstdint>
#include <random>

namespace s2t {

/// Seeded random source passed explicitly to everything stochastic.
/// Integer draws use rejection sampling on the raw 64-bit stream, so the
/// sequence is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  /// Uniform integer in [lo, hi], both inclusive. Requires lo <= hi.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (Box-Muller, no cached second value).
  double Gauss();

 private:
  std::mt19937_64 engine_;
};

/// Stateless 64-bit mixer; used to derive independent per-item streams
/// (per frame, per utterance) from one seed without sharing state.
std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace s2t

#endif  // S2T_RNG_H_
