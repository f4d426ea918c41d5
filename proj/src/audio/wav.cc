// src/audio/wav.cc

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

#include "common/byte_io.h"
#include "s2t/audio.h"
#include "s2t/error.h"

namespace s2t {

using internal::AppendBytes;
using internal::AppendLe16;
using internal::AppendLe32;
using internal::HasPrefix;
using internal::LoadLe16;
using internal::LoadLe32;

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace

PcmData DecodeWavPcm(std::span<const std::uint8_t> bytes) {
  if (!HasPrefix(bytes, "RIFF"))
    throw Error(ErrorCode::kUnsupportedFormat, "missing RIFF magic");
  if (bytes.size() < 12 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::kUnsupportedFormat, "RIFF stream is not WAVE");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t *chunk = bytes.data() + pos;
    const std::uint32_t len = LoadLe32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || body + len > bytes.size())
        throw Error(ErrorCode::kCorruptStream, "truncated fmt chunk");
      const std::uint8_t *f = bytes.data() + body;
      std::uint16_t format = LoadLe16(f);
      channels = LoadLe16(f + 2);
      rate = LoadLe32(f + 4);
      bits = LoadLe16(f + 14);
      if (format == kFormatExtensible) {
        if (len < 40)
          throw Error(ErrorCode::kCorruptStream, "truncated extensible fmt");
        // First two bytes of the subformat GUID carry the format code.
        format = LoadLe16(f + 24);
      }
      if (format != kFormatPcm)
        throw Error(ErrorCode::kUnsupportedFormat,
                    "WAV format code " + std::to_string(format) +
                        " is not PCM");
      if (bits != 16)
        throw Error(ErrorCode::kUnsupportedFormat,
                    "only 16-bit PCM is supported, got " +
                        std::to_string(bits));
      if (channels == 0 || rate == 0)
        throw Error(ErrorCode::kCorruptStream, "zero channels or rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt)
        throw Error(ErrorCode::kCorruptStream, "data chunk before fmt chunk");
      if (body + len > bytes.size())
        throw Error(ErrorCode::kCorruptStream, "truncated data chunk");
      const std::size_t frame_bytes = 2u * channels;
      if (len % frame_bytes != 0)
        throw Error(ErrorCode::kCorruptStream,
                    "data chunk is not a whole number of frames");
      if (len == 0)
        throw Error(ErrorCode::kCorruptStream, "empty data chunk");
      PcmData pcm;
      pcm.sample_rate = static_cast<int>(rate);
      pcm.channels = channels;
      pcm.interleaved.resize(len / 2);
      const std::uint8_t *d = bytes.data() + body;
      for (std::size_t i = 0; i < pcm.interleaved.size(); ++i)
        pcm.interleaved[i] = static_cast<std::int16_t>(LoadLe16(d + 2 * i));
      return pcm;
    }
    pos = body + len + (len & 1);
  }
  throw Error(ErrorCode::kCorruptStream,
              have_fmt ? "no data chunk" : "no fmt chunk");
}

std::vector<std::uint8_t> EncodeWavPcm(const PcmData &pcm) {
  const auto channels = static_cast<std::uint16_t>(pcm.channels);
  const auto data_len = static_cast<std::uint32_t>(pcm.interleaved.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  AppendBytes(&out, "RIFF");
  AppendLe32(&out, 36 + data_len);
  AppendBytes(&out, "WAVEfmt ");
  AppendLe32(&out, 16);
  AppendLe16(&out, kFormatPcm);
  AppendLe16(&out, channels);
  AppendLe32(&out, static_cast<std::uint32_t>(pcm.sample_rate));
  AppendLe32(&out, static_cast<std::uint32_t>(pcm.sample_rate) * 2u * channels);
  AppendLe16(&out, static_cast<std::uint16_t>(2 * channels));
  AppendLe16(&out, 16);
  AppendBytes(&out, "data");
  AppendLe32(&out, data_len);
  for (std::int16_t s : pcm.interleaved)
    AppendLe16(&out, static_cast<std::uint16_t>(s));
  return out;
}

std::vector<std::uint8_t> EncodeWav(const Waveform &w) {
  PcmData pcm;
  pcm.sample_rate = w.sample_rate;
  pcm.channels = 1;
  pcm.interleaved.reserve(w.samples.size());
  for (float s : w.samples) {
    double code = std::nearbyint(static_cast<double>(s) * 32768.0);
    code = std::clamp(code, -32768.0, 32767.0);
    pcm.interleaved.push_back(static_cast<std::int16_t>(code));
  }
  return EncodeWavPcm(pcm);
}

}  // namespace s2t
