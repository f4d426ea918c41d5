// include/s2t/audio.h

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

#ifndef S2T_AUDIO_H_
#define S2T_AUDIO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace s2t {

/// Mono PCM waveform, amplitudes nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;
  int channel_count = 1;

  std::size_t size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class AudioFormat { kWav, kFlac };

/// Decodes a WAV (PCM 16-bit) or FLAC (16-bit) byte stream. Multi-channel
/// input is downmixed by the arithmetic mean; integer codes are scaled by
/// 1/32768. With no hint the container is sniffed from its magic bytes; a
/// hint forces one decoder and a mismatching magic is UnsupportedFormat.
Waveform DecodeAudio(std::span<const std::uint8_t> bytes,
                     std::optional<AudioFormat> hint = std::nullopt);

/// Maps "wav" / "flac" (any case, leading dot allowed) to a format tag.
std::optional<AudioFormat> FormatFromExtension(const std::string &path);

// Container-level decoders. Both return interleaved int16 codes.
struct PcmData {
  std::vector<std::int16_t> interleaved;
  int sample_rate = 0;
  int channels = 0;
};
PcmData DecodeWavPcm(std::span<const std::uint8_t> bytes);
PcmData DecodeFlacPcm(std::span<const std::uint8_t> bytes);

/// Downmix + 1/32768 scaling.
Waveform PcmToWaveform(const PcmData &pcm);

/// RIFF/WAVE PCM16 mono encoding. Samples are rounded to the nearest
/// 1/32768 step and clamped to the int16 range.
std::vector<std::uint8_t> EncodeWav(const Waveform &w);
/// Same, for already-quantized (possibly multi-channel) codes.
std::vector<std::uint8_t> EncodeWavPcm(const PcmData &pcm);

/// samples[n] = amplitude * sin(2 pi freq n / rate), n < round(duration*rate).
Waveform SynthSine(double freq, double duration, int rate, double amplitude);

/// Kaiser-windowed sinc interpolator (beta 8.6, 64 zero crossings).
struct ResamplerConfig {
  double kaiser_beta = 8.6;
  int zero_crossings = 64;
};

/// Evaluates the band-limited signal at input positions t_j = j * step for
/// j < out_len. Cutoff is min(1, 1/step) of the input Nyquist, so step > 1
/// is anti-aliased. The parallel and serial kernels are bit-identical.
std::vector<float> ResampleByStep(std::span<const float> input, double step,
                                  std::size_t out_len,
                                  const ResamplerConfig &cfg = {});
std::vector<float> ResampleByStepSerial(std::span<const float> input,
                                        double step, std::size_t out_len,
                                        const ResamplerConfig &cfg = {});

/// sox "speed": resample by 1/factor and keep the nominal rate, so tempo
/// and pitch shift together. Output length is round(len / factor).
/// factor must lie in [0.5, 2.0]; 1.0 returns an exact copy.
Waveform SpeedPerturb(const Waveform &w, double factor);

inline constexpr double kMinSpeedFactor = 0.5;
inline constexpr double kMaxSpeedFactor = 2.0;

}  // namespace s2t

#endif  // S2T_AUDIO_H_
