// src/features/fbank.cc

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

// features/fbank.cc

#include <cmath>
#include <numbers>

#include "s2t/error.h"
#include "s2t/features.h"
#include "s2t/rng.h"

namespace s2t {

// Kaldi computes on the int16 amplitude scale; waveforms here are in [-1, 1].
constexpr double kPcmScale = 32768.0;

void FbankConfig::Validate() const {
  if (num_mel_bins < 1)
    throw Error(ErrorCode::kInvalidArgument, "num_mel_bins must be >= 1");
  if (!(frame_shift_ms > 0.0) || !(frame_length_ms > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "frame length/shift must be > 0");
  if (frame_shift_ms > frame_length_ms)
    throw Error(ErrorCode::kInvalidArgument,
                "frame_shift_ms must not exceed frame_length_ms");
  if (!(log_floor > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "log_floor must be > 0");
  if (dither < 0.0)
    throw Error(ErrorCode::kInvalidArgument, "dither must be >= 0");
}

int FbankConfig::WindowSamples(int sample_rate) const {
  return static_cast<int>(std::lround(sample_rate * 0.001 * frame_length_ms));
}

int FbankConfig::ShiftSamples(int sample_rate) const {
  return static_cast<int>(std::lround(sample_rate * 0.001 * frame_shift_ms));
}

double MelScale(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::exp(mel / 1127.0) - 1.0);
}

std::vector<MelFilter> ComputeMelBanks(const FbankConfig &cfg, int sample_rate,
                                       int fft_size) {
  const double nyquist = 0.5 * sample_rate;
  const double high = cfg.high_freq > 0.0 ? cfg.high_freq : nyquist + cfg.high_freq;
  if (cfg.low_freq < 0.0 || high <= cfg.low_freq || high > nyquist)
    throw Error(ErrorCode::kInvalidArgument, "invalid mel frequency range");
  const int num_fft_bins = fft_size / 2;
  const double bin_width = static_cast<double>(sample_rate) / fft_size;
  const double mel_low = MelScale(cfg.low_freq);
  const double mel_high = MelScale(high);
  const double delta = (mel_high - mel_low) / (cfg.num_mel_bins + 1);

  std::vector<MelFilter> banks(cfg.num_mel_bins);
  for (int b = 0; b < cfg.num_mel_bins; ++b) {
    MelFilter &f = banks[b];
    f.left_mel = mel_low + b * delta;
    f.center_mel = mel_low + (b + 1) * delta;
    f.right_mel = mel_low + (b + 2) * delta;
    int first = -1, last = -1;
    std::vector<double> weights(num_fft_bins, 0.0);
    for (int i = 0; i < num_fft_bins; ++i) {
      const double mel = MelScale(bin_width * i);
      if (mel > f.left_mel && mel < f.right_mel) {
        weights[i] = mel <= f.center_mel
                         ? (mel - f.left_mel) / (f.center_mel - f.left_mel)
                         : (f.right_mel - mel) / (f.right_mel - f.center_mel);
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first < 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "mel bin " + std::to_string(b) +
                      " covers no FFT bin; use fewer mel bins");
    f.first_bin = first;
    f.weights.assign(weights.begin() + first, weights.begin() + last + 1);
  }
  return banks;
}

std::size_t FrameCount(std::size_t num_samples, const FbankConfig &cfg,
                       int sample_rate) {
  const auto win = static_cast<std::size_t>(cfg.WindowSamples(sample_rate));
  const auto shift = static_cast<std::size_t>(cfg.ShiftSamples(sample_rate));
  if (cfg.snip_edges) {
    if (num_samples < win) return 0;
    return 1 + (num_samples - win) / shift;
  }
  return (num_samples + shift / 2) / shift;
}

struct FbankComputer::Scratch {
  std::vector<double> frame;
  std::vector<std::complex<double>> fft;
  std::vector<double> power;

  explicit Scratch(int fft_size)
      : frame(fft_size, 0.0), fft(fft_size), power(fft_size / 2 + 1) {}
};

FbankComputer::FbankComputer(const FbankConfig &cfg, int sample_rate)
    : cfg_(cfg),
      sample_rate_(sample_rate),
      window_samples_(cfg.WindowSamples(sample_rate)),
      shift_samples_(cfg.ShiftSamples(sample_rate)),
      fft_(NextPowerOfTwo(std::max(2, cfg.WindowSamples(sample_rate)))) {
  cfg_.Validate();
  if (sample_rate <= 0)
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be > 0");
  if (window_samples_ < 2 || shift_samples_ < 1)
    throw Error(ErrorCode::kInvalidArgument, "frame too short for sample rate");
  window_.resize(window_samples_);
  const double a = 2.0 * std::numbers::pi / (window_samples_ - 1);
  for (int i = 0; i < window_samples_; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(a * i);
    switch (cfg_.window) {
      case WindowType::kPovey: window_[i] = std::pow(hann, 0.85); break;
      case WindowType::kHanning: window_[i] = hann; break;
      case WindowType::kHamming: window_[i] = 0.54 - 0.46 * std::cos(a * i); break;
    }
  }
  banks_ = ComputeMelBanks(cfg_, sample_rate, fft_.size());
}

void FbankComputer::ComputeFrame(std::span<const float> wave, std::size_t frame,
                                 Scratch &scratch,
                                 std::span<float> out) const {
  const auto n = static_cast<std::int64_t>(wave.size());
  const int win = window_samples_;
  std::int64_t start = static_cast<std::int64_t>(frame) * shift_samples_;
  if (!cfg_.snip_edges) start += shift_samples_ / 2 - win / 2;

  double *x = scratch.frame.data();
  for (int i = 0; i < win; ++i) {
    std::int64_t s = start + i;
    while (s < 0 || s >= n) s = s < 0 ? -s - 1 : 2 * n - 1 - s;  // reflect
    x[i] = static_cast<double>(wave[s]) * kPcmScale;
  }

  if (cfg_.dither > 0.0) {
    // Per-frame stream so the parallel and serial kernels agree.
    Rng rng(SplitMix64(cfg_.dither_seed ^ SplitMix64(frame)));
    for (int i = 0; i < win; ++i) x[i] += cfg_.dither * rng.Gauss();
  }
  if (cfg_.remove_dc_offset) {
    double mean = 0.0;
    for (int i = 0; i < win; ++i) mean += x[i];
    mean /= win;
    for (int i = 0; i < win; ++i) x[i] -= mean;
  }
  if (cfg_.preemphasis != 0.0) {
    for (int i = win - 1; i > 0; --i) x[i] -= cfg_.preemphasis * x[i - 1];
    x[0] -= cfg_.preemphasis * x[0];
  }
  for (int i = 0; i < win; ++i) x[i] *= window_[i];
  for (int i = win; i < fft_.size(); ++i) x[i] = 0.0;

  fft_.PowerSpectrum(scratch.frame, scratch.fft, scratch.power);

  for (std::size_t b = 0; b < banks_.size(); ++b) {
    const MelFilter &f = banks_[b];
    double energy = 0.0;
    for (std::size_t k = 0; k < f.weights.size(); ++k)
      energy += f.weights[k] * scratch.power[f.first_bin + k];
    out[b] = static_cast<float>(std::log(std::max(energy, cfg_.log_floor)));
  }
}

std::size_t FbankComputer::CheckedFrameCount(const Waveform &w) const {
  if (w.sample_rate != sample_rate_)
    throw Error(ErrorCode::kInvalidArgument,
                "waveform rate " + std::to_string(w.sample_rate) +
                    " does not match computer rate " +
                    std::to_string(sample_rate_));
  const std::size_t frames = FrameCount(w.samples.size(), cfg_, sample_rate_);
  if (frames == 0 || w.samples.empty())
    throw Error(ErrorCode::kAudioTooShort,
                std::to_string(w.samples.size()) +
                    " samples is shorter than one " +
                    std::to_string(window_samples_) + "-sample window");
  return frames;
}

FeatureMatrix FbankComputer::ComputeSerial(const Waveform &w) const {
  const std::size_t frames = CheckedFrameCount(w);
  FeatureMatrix out(frames, banks_.size());
  Scratch scratch(fft_.size());
  for (std::size_t t = 0; t < frames; ++t)
    ComputeFrame(w.samples, t, scratch, out.Row(t));
  return out;
}

FeatureMatrix FbankComputer::Compute(const Waveform &w) const {
  const std::size_t frames = CheckedFrameCount(w);
  FeatureMatrix out(frames, banks_.size());
  const auto count = static_cast<std::int64_t>(frames);
#pragma omp parallel
  {
    Scratch scratch(fft_.size());
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < count; ++t)
      ComputeFrame(w.samples, static_cast<std::size_t>(t), scratch, out.Row(t));
  }
  return out;
}

FeatureMatrix LogMelFbank(const Waveform &w, const FbankConfig &cfg) {
  return FbankComputer(cfg, w.sample_rate).Compute(w);
}

}  // namespace s2t
