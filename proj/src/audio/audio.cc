// src/audio/audio.cc

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
#include <cctype>
#include <cmath>
#include <numbers>

#include "common/byte_io.h"
#include "s2t/audio.h"
#include "s2t/error.h"

namespace s2t {

Waveform PcmToWaveform(const PcmData &pcm) {
  if (pcm.channels <= 0 || pcm.sample_rate <= 0)
    throw Error(ErrorCode::kCorruptStream, "invalid channel count or rate");
  const std::size_t frames = pcm.interleaved.size() / pcm.channels;
  if (frames == 0) throw Error(ErrorCode::kCorruptStream, "no samples");
  Waveform w;
  w.sample_rate = pcm.sample_rate;
  w.channel_count = 1;
  w.samples.resize(frames);
  const double scale = 1.0 / (32768.0 * pcm.channels);
  for (std::size_t f = 0; f < frames; ++f) {
    std::int64_t sum = 0;
    for (int c = 0; c < pcm.channels; ++c)
      sum += pcm.interleaved[f * pcm.channels + c];
    w.samples[f] = static_cast<float>(static_cast<double>(sum) * scale);
  }
  return w;
}

std::optional<AudioFormat> FormatFromExtension(const std::string &path) {
  const auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? path : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "wav") return AudioFormat::kWav;
  if (ext == "flac") return AudioFormat::kFlac;
  return std::nullopt;
}

Waveform DecodeAudio(std::span<const std::uint8_t> bytes,
                     std::optional<AudioFormat> hint) {
  if (!hint) {
    if (internal::HasPrefix(bytes, "RIFF")) hint = AudioFormat::kWav;
    else if (internal::HasPrefix(bytes, "fLaC") ||
             internal::HasPrefix(bytes, "ID3"))
      hint = AudioFormat::kFlac;
    else
      throw Error(ErrorCode::kUnsupportedFormat,
                  "neither a RIFF/WAVE nor a FLAC stream");
  }
  return PcmToWaveform(*hint == AudioFormat::kWav ? DecodeWavPcm(bytes)
                                                  : DecodeFlacPcm(bytes));
}

Waveform SynthSine(double freq, double duration, int rate, double amplitude) {
  if (rate <= 0) throw Error(ErrorCode::kInvalidArgument, "rate must be > 0");
  if (!(freq > 0.0) || !(freq < rate / 2.0))
    throw Error(ErrorCode::kInvalidArgument,
                "frequency must lie strictly between 0 and Nyquist");
  if (!(amplitude > 0.0) || amplitude > 1.0)
    throw Error(ErrorCode::kInvalidArgument, "amplitude must be in (0, 1]");
  const double len = std::round(duration * rate);
  if (!(len >= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "duration yields no samples");
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(static_cast<std::size_t>(len));
  const double omega = 2.0 * std::numbers::pi * freq / rate;
  for (std::size_t n = 0; n < w.samples.size(); ++n)
    w.samples[n] =
        static_cast<float>(amplitude * std::sin(omega * static_cast<double>(n)));
  return w;
}

Waveform SpeedPerturb(const Waveform &w, double factor) {
  if (!(factor >= kMinSpeedFactor && factor <= kMaxSpeedFactor))
    throw Error(ErrorCode::kInvalidArgument,
                "speed factor must lie in [0.5, 2.0]");
  if (w.samples.empty())
    throw Error(ErrorCode::kInvalidArgument, "empty waveform");
  if (factor == 1.0) return w;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(w.samples.size()) / factor));
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples = ResampleByStep(w.samples, factor, out_len);
  for (float &s : out.samples) s = std::clamp(s, -1.0f, 1.0f);
  return out;
}

}  // namespace s2t
