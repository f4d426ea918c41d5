// src/audio/flac.cc

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

// Native FLAC stream decoder, restricted to 16-bit streams. Covers every
// subframe type (constant, verbatim, fixed, LPC), wasted bits, both Rice
// residual codings with escape partitions, and all stereo decorrelation
// modes. Header CRC-8 and frame CRC-16 are verified.

#include <array>
#include <cstring>

#include "common/byte_io.h"
#include "s2t/audio.h"
#include "s2t/error.h"

namespace s2t {
namespace {

[[noreturn]] void Corrupt(const std::string &what) {
  throw Error(ErrorCode::kCorruptStream, "FLAC: " + what);
}

constexpr std::array<std::uint8_t, 256> MakeCrc8Table() {
  std::array<std::uint8_t, 256> t{};
  for (int i = 0; i < 256; ++i) {
    std::uint8_t c = static_cast<std::uint8_t>(i);
    for (int b = 0; b < 8; ++b)
      c = static_cast<std::uint8_t>((c & 0x80) ? (c << 1) ^ 0x07 : c << 1);
    t[i] = c;
  }
  return t;
}

constexpr std::array<std::uint16_t, 256> MakeCrc16Table() {
  std::array<std::uint16_t, 256> t{};
  for (int i = 0; i < 256; ++i) {
    std::uint16_t c = static_cast<std::uint16_t>(i << 8);
    for (int b = 0; b < 8; ++b)
      c = static_cast<std::uint16_t>((c & 0x8000) ? (c << 1) ^ 0x8005 : c << 1);
    t[i] = c;
  }
  return t;
}

constexpr auto kCrc8 = MakeCrc8Table();
constexpr auto kCrc16 = MakeCrc16Table();

std::uint8_t Crc8(std::span<const std::uint8_t> d) {
  std::uint8_t c = 0;
  for (std::uint8_t b : d) c = kCrc8[c ^ b];
  return c;
}

std::uint16_t Crc16(std::span<const std::uint8_t> d) {
  std::uint16_t c = 0;
  for (std::uint8_t b : d)
    c = static_cast<std::uint16_t>((c << 8) ^ kCrc16[(c >> 8) ^ b]);
  return c;
}

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint64_t Read(int n) {
    std::uint64_t v = 0;
    while (n > 0) {
      if (byte_ >= data_.size()) Corrupt("unexpected end of stream");
      const int avail = 8 - bit_;
      const int take = n < avail ? n : avail;
      const std::uint32_t chunk =
          (data_[byte_] >> (avail - take)) & ((1u << take) - 1);
      v = (v << take) | chunk;
      n -= take;
      bit_ += take;
      if (bit_ == 8) {
        bit_ = 0;
        ++byte_;
      }
    }
    return v;
  }

  std::int64_t ReadSigned(int n) {
    if (n == 0) return 0;
    const std::uint64_t v = Read(n);
    const std::uint64_t sign = std::uint64_t{1} << (n - 1);
    return static_cast<std::int64_t>(v ^ sign) - static_cast<std::int64_t>(sign);
  }

  /// Number of 0 bits before the next 1 bit (the 1 is consumed).
  std::uint64_t ReadUnary() {
    std::uint64_t zeros = 0;
    for (;;) {
      if (byte_ >= data_.size()) Corrupt("unexpected end of stream");
      if (bit_ == 0 && data_[byte_] == 0) {
        zeros += 8;
        ++byte_;
        continue;
      }
      if (Read(1)) return zeros;
      ++zeros;
    }
  }

  void AlignToByte() {
    if (bit_ != 0) {
      bit_ = 0;
      ++byte_;
    }
  }

  std::size_t byte_pos() const { return byte_; }
  bool aligned() const { return bit_ == 0; }
  void Seek(std::size_t byte) {
    byte_ = byte;
    bit_ = 0;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t byte_ = 0;
  int bit_ = 0;
};

struct StreamInfo {
  std::uint32_t sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::uint64_t total_samples = 0;
};

void DecodeResidual(BitReader &br, int block_size, int predictor_order,
                    std::int64_t *out) {
  const auto method = br.Read(2);
  if (method > 1) Corrupt("reserved residual coding method");
  const int param_bits = method == 0 ? 4 : 5;
  const std::uint64_t escape = method == 0 ? 15 : 31;
  const int partition_order = static_cast<int>(br.Read(4));
  const int partitions = 1 << partition_order;
  const int per_partition = block_size >> partition_order;
  if ((per_partition << partition_order) != block_size ||
      per_partition < predictor_order)
    Corrupt("invalid residual partition order");

  int idx = 0;
  for (int p = 0; p < partitions; ++p) {
    const int count = per_partition - (p == 0 ? predictor_order : 0);
    const std::uint64_t param = br.Read(param_bits);
    if (param == escape) {
      const int raw_bits = static_cast<int>(br.Read(5));
      for (int i = 0; i < count; ++i) out[idx++] = br.ReadSigned(raw_bits);
    } else {
      const int k = static_cast<int>(param);
      for (int i = 0; i < count; ++i) {
        const std::uint64_t q = br.ReadUnary();
        if (q > (std::uint64_t{1} << 32)) Corrupt("runaway Rice quotient");
        const std::uint64_t u = (q << k) | br.Read(k);
        out[idx++] = static_cast<std::int64_t>(u >> 1) ^
                     -static_cast<std::int64_t>(u & 1);
      }
    }
  }
}

void DecodeSubframe(BitReader &br, int block_size, int bps,
                    std::vector<std::int64_t> &samples) {
  samples.assign(block_size, 0);
  if (br.Read(1) != 0) Corrupt("subframe padding bit set");
  const int type = static_cast<int>(br.Read(6));
  int wasted = 0;
  if (br.Read(1)) wasted = static_cast<int>(br.ReadUnary()) + 1;
  if (wasted >= bps) Corrupt("wasted bits exceed sample size");
  const int sbps = bps - wasted;

  if (type == 0) {
    const std::int64_t v = br.ReadSigned(sbps);
    for (auto &s : samples) s = v;
  } else if (type == 1) {
    for (auto &s : samples) s = br.ReadSigned(sbps);
  } else if (type >= 8 && type <= 12) {
    const int order = type - 8;
    if (order > block_size) Corrupt("fixed order exceeds block size");
    for (int i = 0; i < order; ++i) samples[i] = br.ReadSigned(sbps);
    DecodeResidual(br, block_size, order, samples.data() + order);
    std::int64_t *s = samples.data();
    for (int n = order; n < block_size; ++n) {
      switch (order) {
        case 1: s[n] += s[n - 1]; break;
        case 2: s[n] += 2 * s[n - 1] - s[n - 2]; break;
        case 3: s[n] += 3 * s[n - 1] - 3 * s[n - 2] + s[n - 3]; break;
        case 4:
          s[n] += 4 * s[n - 1] - 6 * s[n - 2] + 4 * s[n - 3] - s[n - 4];
          break;
        default: break;
      }
    }
  } else if (type >= 32) {
    const int order = (type & 31) + 1;
    if (order > block_size) Corrupt("LPC order exceeds block size");
    for (int i = 0; i < order; ++i) samples[i] = br.ReadSigned(sbps);
    const int precision = static_cast<int>(br.Read(4)) + 1;
    if (precision == 16) Corrupt("invalid LPC coefficient precision");
    const std::int64_t shift = br.ReadSigned(5);
    if (shift < 0) Corrupt("negative LPC shift");
    std::array<std::int64_t, 32> coefs{};
    for (int i = 0; i < order; ++i) coefs[i] = br.ReadSigned(precision);
    DecodeResidual(br, block_size, order, samples.data() + order);
    std::int64_t *s = samples.data();
    for (int n = order; n < block_size; ++n) {
      std::int64_t acc = 0;
      for (int j = 0; j < order; ++j) acc += coefs[j] * s[n - 1 - j];
      s[n] += acc >> shift;
    }
  } else {
    Corrupt("reserved subframe type " + std::to_string(type));
  }

  if (wasted > 0)
    for (auto &s : samples) s *= (std::int64_t{1} << wasted);
}

StreamInfo ReadMetadata(BitReader &br, std::span<const std::uint8_t> bytes) {
  StreamInfo info;
  bool have_info = false;
  for (;;) {
    const bool last = br.Read(1) != 0;
    const int type = static_cast<int>(br.Read(7));
    const std::size_t len = br.Read(24);
    const std::size_t body = br.byte_pos();
    if (body + len > bytes.size()) Corrupt("truncated metadata block");
    if (type == 0) {
      if (len < 34) Corrupt("short STREAMINFO");
      br.Read(16);  // min block size
      br.Read(16);  // max block size
      br.Read(24);  // min frame size
      br.Read(24);  // max frame size
      info.sample_rate = static_cast<std::uint32_t>(br.Read(20));
      info.channels = static_cast<int>(br.Read(3)) + 1;
      info.bits_per_sample = static_cast<int>(br.Read(5)) + 1;
      info.total_samples = br.Read(36);
      have_info = true;
    } else if (!have_info) {
      Corrupt("first metadata block is not STREAMINFO");
    }
    br.Seek(body + len);
    if (last) break;
  }
  if (info.bits_per_sample != 16)
    throw Error(ErrorCode::kUnsupportedFormat,
                "FLAC: only 16-bit streams are supported, got " +
                    std::to_string(info.bits_per_sample));
  if (info.sample_rate == 0) Corrupt("zero sample rate in STREAMINFO");
  return info;
}

int BlockSizeFromCode(int code, BitReader &br) {
  if (code == 0) Corrupt("reserved block size code");
  if (code == 1) return 192;
  if (code <= 5) return 576 << (code - 2);
  if (code == 6) return static_cast<int>(br.Read(8)) + 1;
  if (code == 7) return static_cast<int>(br.Read(16)) + 1;
  return 256 << (code - 8);
}

}  // namespace

PcmData DecodeFlacPcm(std::span<const std::uint8_t> bytes) {
  std::size_t start = 0;
  // Skip an ID3v2 tag if some tool prepended one.
  if (internal::HasPrefix(bytes, "ID3") && bytes.size() >= 10) {
    const std::size_t tag_len = (std::size_t{bytes[6]} << 21) |
                                (std::size_t{bytes[7]} << 14) |
                                (std::size_t{bytes[8]} << 7) | bytes[9];
    start = 10 + tag_len;
  }
  if (!internal::HasPrefix(bytes.subspan(std::min(start, bytes.size())), "fLaC"))
    throw Error(ErrorCode::kUnsupportedFormat, "missing fLaC magic");

  BitReader br(bytes);
  br.Seek(start + 4);
  const StreamInfo info = ReadMetadata(br, bytes);

  PcmData pcm;
  pcm.sample_rate = static_cast<int>(info.sample_rate);
  pcm.channels = info.channels;
  if (info.total_samples > 0)
    pcm.interleaved.reserve(info.total_samples * info.channels);

  std::vector<std::vector<std::int64_t>> chans(8);
  std::uint64_t decoded = 0;
  while (br.byte_pos() < bytes.size()) {
    if (info.total_samples > 0 && decoded >= info.total_samples) break;
    const std::size_t frame_start = br.byte_pos();
    if (br.Read(14) != 0x3ffe) Corrupt("lost frame sync");
    if (br.Read(1) != 0) Corrupt("reserved frame header bit set");
    br.Read(1);  // blocking strategy
    const int bs_code = static_cast<int>(br.Read(4));
    const int sr_code = static_cast<int>(br.Read(4));
    const int ch_code = static_cast<int>(br.Read(4));
    const int ss_code = static_cast<int>(br.Read(3));
    if (br.Read(1) != 0) Corrupt("reserved frame header bit set");

    // UTF-8 style coded frame or sample number.
    const auto lead = static_cast<std::uint8_t>(br.Read(8));
    int extra = 0;
    if (lead & 0x80) {
      std::uint8_t mask = 0x40;
      while ((lead & mask) && extra < 6) {
        ++extra;
        mask >>= 1;
      }
      if (extra == 0 || (lead & mask)) Corrupt("bad coded frame number");
    }
    for (int i = 0; i < extra; ++i)
      if ((br.Read(8) & 0xc0) != 0x80) Corrupt("bad coded frame number");

    const int block_size = BlockSizeFromCode(bs_code, br);
    if (sr_code == 12) br.Read(8);
    else if (sr_code == 13 || sr_code == 14) br.Read(16);
    else if (sr_code == 15) Corrupt("invalid sample rate code");

    const std::size_t header_end = br.byte_pos();
    const auto crc8 = static_cast<std::uint8_t>(br.Read(8));
    if (crc8 != Crc8(bytes.subspan(frame_start, header_end - frame_start)))
      Corrupt("frame header CRC mismatch");

    int channels;
    if (ch_code < 8) channels = ch_code + 1;
    else if (ch_code <= 10) channels = 2;
    else Corrupt("reserved channel assignment");
    if (channels != info.channels) Corrupt("channel count changed mid-stream");

    int bps = info.bits_per_sample;
    if (ss_code != 0) {
      static constexpr int kSizes[8] = {0, 8, 12, 0, 16, 20, 24, 32};
      if (ss_code == 3) Corrupt("reserved sample size code");
      bps = kSizes[ss_code];
    }
    if (bps != 16)
      throw Error(ErrorCode::kUnsupportedFormat,
                  "FLAC: frame sample size is not 16-bit");

    for (int c = 0; c < channels; ++c) {
      const bool side = (ch_code == 8 && c == 1) || (ch_code == 9 && c == 0) ||
                        (ch_code == 10 && c == 1);
      DecodeSubframe(br, block_size, bps + (side ? 1 : 0), chans[c]);
    }
    br.AlignToByte();
    const std::size_t frame_end = br.byte_pos();
    const auto crc16 = static_cast<std::uint16_t>(br.Read(16));
    if (crc16 != Crc16(bytes.subspan(frame_start, frame_end - frame_start)))
      Corrupt("frame CRC mismatch");

    auto &a = chans[0];
    auto &b = chans[1];
    for (int i = 0; i < block_size; ++i) {
      switch (ch_code) {
        case 8: b[i] = a[i] - b[i]; break;  // left, side
        case 9: a[i] = a[i] + b[i]; break;  // side, right
        case 10: {
          const std::int64_t mid = (a[i] * 2) | (b[i] & 1);
          const std::int64_t s = b[i];
          a[i] = (mid + s) >> 1;
          b[i] = (mid - s) >> 1;
          break;
        }
        default: break;
      }
    }

    std::uint64_t take = static_cast<std::uint64_t>(block_size);
    if (info.total_samples > 0)
      take = std::min<std::uint64_t>(take, info.total_samples - decoded);
    for (std::uint64_t i = 0; i < take; ++i) {
      for (int c = 0; c < channels; ++c) {
        const std::int64_t v = chans[c][i];
        if (v < -32768 || v > 32767) Corrupt("sample out of 16-bit range");
        pcm.interleaved.push_back(static_cast<std::int16_t>(v));
      }
    }
    decoded += take;
  }

  if (info.total_samples > 0 && decoded < info.total_samples)
    Corrupt("stream ends before the declared sample count");
  if (decoded == 0) Corrupt("no audio frames");
  return pcm;
}

}  // namespace s2t
