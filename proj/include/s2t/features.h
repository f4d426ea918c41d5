// include/s2t/features.h

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

#ifndef S2T_FEATURES_H_
#define S2T_FEATURES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "s2t/audio.h"
#include "s2t/fft.h"

namespace s2t {

enum class WindowType { kPovey, kHamming, kHanning };

/// Kaldi fbank options. Defaults give 80-bin log mel features with 25 ms
/// windows every 10 ms, without dithering.
struct FbankConfig {
  int num_mel_bins = 80;
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  double preemphasis = 0.97;
  WindowType window = WindowType::kPovey;
  double dither = 0.0;
  std::uint64_t dither_seed = 0;
  bool remove_dc_offset = true;
  bool snip_edges = true;
  double log_floor = 1.1921e-7;
  double low_freq = 20.0;
  double high_freq = 0.0;  // <= 0 is an offset from Nyquist

  void Validate() const;
  int WindowSamples(int sample_rate) const;
  int ShiftSamples(int sample_rate) const;
};

/// Row-major T x F float matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, float fill = 0.0f)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t num_frames() const { return rows_; }
  std::size_t feature_dim() const { return cols_; }
  bool empty() const { return data_.empty(); }

  float &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  float operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<float> Row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool operator==(const FeatureMatrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

/// One triangular filter; weights cover fft bins [first_bin, first_bin+n).
struct MelFilter {
  double left_mel = 0.0;
  double center_mel = 0.0;
  double right_mel = 0.0;
  int first_bin = 0;
  std::vector<double> weights;
};

double MelScale(double hz);     // 1127 ln(1 + hz/700)
double InverseMelScale(double mel);

std::vector<MelFilter> ComputeMelBanks(const FbankConfig &cfg, int sample_rate,
                                       int fft_size);

/// Frames logmel_fbank would emit for `num_samples` samples; 0 when the
/// signal is shorter than one window (snip_edges).
std::size_t FrameCount(std::size_t num_samples, const FbankConfig &cfg,
                       int sample_rate);

/// Precomputed window, mel banks and FFT for one (config, rate) pair.
/// Const methods are thread-safe.
class FbankComputer {
 public:
  FbankComputer(const FbankConfig &cfg, int sample_rate);

  const FbankConfig &config() const { return cfg_; }
  int window_samples() const { return window_samples_; }
  int shift_samples() const { return shift_samples_; }
  const std::vector<MelFilter> &mel_banks() const { return banks_; }

  /// Frames processed in parallel (OpenMP).
  FeatureMatrix Compute(const Waveform &w) const;
  /// Straight serial loop over frames; the reference for Compute.
  FeatureMatrix ComputeSerial(const Waveform &w) const;

 private:
  struct Scratch;
  void ComputeFrame(std::span<const float> wave, std::size_t frame,
                    Scratch &scratch, std::span<float> out) const;
  std::size_t CheckedFrameCount(const Waveform &w) const;

  FbankConfig cfg_;
  int sample_rate_;
  int window_samples_;
  int shift_samples_;
  std::vector<double> window_;
  std::vector<MelFilter> banks_;
  Fft fft_;
};

FeatureMatrix LogMelFbank(const Waveform &w, const FbankConfig &cfg = {});

inline constexpr double kCmvnStdFloor = 1e-8;

/// Per-column standardization with the utterance's own population moments.
FeatureMatrix UtteranceCmvn(const FeatureMatrix &feat);
FeatureMatrix UtteranceCmvnSerial(const FeatureMatrix &feat);

/// Applies (x - mean) / std column-wise.
FeatureMatrix ApplyCmvn(const FeatureMatrix &feat, std::span<const double> mean,
                        std::span<const double> stddev);

struct CmvnMoments {
  std::vector<double> mean;
  std::vector<double> stddev;
};

/// Streaming corpus-level moments. One accumulator per worker; combine with
/// Merge (associative and commutative on counts and sums).
class GcmvnStats {
 public:
  void Accumulate(const FeatureMatrix &feat);
  void Merge(const GcmvnStats &other);
  CmvnMoments Finalize() const;

  std::uint64_t count() const { return count_; }
  std::size_t dim() const { return sum_.size(); }
  std::span<const double> sum() const { return sum_; }
  std::span<const double> sum_sq() const { return sum_sq_; }

 private:
  std::uint64_t count_ = 0;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

/// Binary matrix file: 8-byte magic, u32 T, u32 F (little endian), then T*F
/// little-endian f32 values row-major.
inline constexpr char kFeatureMagic[9] = "S2TFBANK";
std::vector<std::uint8_t> SerializeFeatures(const FeatureMatrix &feat);
FeatureMatrix ParseFeatures(std::span<const std::uint8_t> bytes);
bool IsFeatureFile(std::span<const std::uint8_t> bytes);

}  // namespace s2t

#endif  // S2T_FEATURES_H_
