// src/dataset/zip.cc

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

// Stored-only (method 0) ZIP writer and index reader. Payloads are never
// compressed, so an entry can be addressed as a raw byte range.

#include <zlib.h>

#include <limits>

#include "common/byte_io.h"
#include "s2t/dataset.h"
#include "s2t/error.h"

namespace s2t {

using internal::AppendLe16;
using internal::AppendLe32;
using internal::LoadLe16;
using internal::LoadLe32;

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint16_t kVersion = 10;
constexpr std::uint16_t kUtf8Flag = 0x0800;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01
constexpr std::uint64_t kMax32 = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kEndRecordSize = 22;

std::uint32_t Crc32(std::span<const std::uint8_t> data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t n = std::min<std::size_t>(data.size() - pos, 1u << 30);
    crc = crc32(crc, data.data() + pos, static_cast<uInt>(n));
    pos += n;
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void TooLarge() {
  throw Error(ErrorCode::kOutOfBounds,
              "archive exceeds 4 GiB or 65535 entries; ZIP64 is not supported");
}

}  // namespace

struct ZipWriter::Central {
  std::string name;
  std::uint32_t crc;
  std::uint32_t size;
  std::uint32_t local_offset;
};

void ZipIndex::Add(ZipEntry e) {
  if (!by_name_.emplace(e.name, entries_.size()).second)
    throw Error(ErrorCode::kDuplicateName, "duplicate archive entry '" + e.name + "'");
  entries_.push_back(std::move(e));
}

const ZipEntry *ZipIndex::Find(std::string_view name) const {
  const auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

ZipWriter::ZipWriter() = default;
ZipWriter::~ZipWriter() = default;

const ZipEntry &ZipWriter::Add(const std::string &name,
                               std::span<const std::uint8_t> data) {
  if (finished_) throw Error(ErrorCode::kInvalidArgument, "ZipWriter already finished");
  if (name.empty() || name.size() > 0xffff)
    throw Error(ErrorCode::kInvalidArgument, "invalid archive entry name");
  if (index_.Find(name))
    throw Error(ErrorCode::kDuplicateName, "duplicate archive entry '" + name + "'");
  const std::uint64_t local_offset = bytes_.size();
  const std::uint64_t payload_offset = local_offset + kLocalHeaderSize + name.size();
  if (payload_offset + data.size() > kMax32 || central_.size() >= 0xffff) TooLarge();

  const std::uint32_t crc = Crc32(data);
  const auto size = static_cast<std::uint32_t>(data.size());
  AppendLe32(&bytes_, kLocalSig);
  AppendLe16(&bytes_, kVersion);
  AppendLe16(&bytes_, kUtf8Flag);
  AppendLe16(&bytes_, 0);  // stored
  AppendLe16(&bytes_, 0);  // time
  AppendLe16(&bytes_, kDosDate);
  AppendLe32(&bytes_, crc);
  AppendLe32(&bytes_, size);
  AppendLe32(&bytes_, size);
  AppendLe16(&bytes_, static_cast<std::uint16_t>(name.size()));
  AppendLe16(&bytes_, 0);  // extra
  internal::AppendBytes(&bytes_, name);
  bytes_.insert(bytes_.end(), data.begin(), data.end());

  central_.push_back({name, crc, size, static_cast<std::uint32_t>(local_offset)});
  index_.Add({name, payload_offset, data.size()});
  return index_.entries().back();
}

std::vector<std::uint8_t> ZipWriter::Finish() {
  if (finished_) throw Error(ErrorCode::kInvalidArgument, "ZipWriter already finished");
  finished_ = true;
  const std::uint64_t cd_offset = bytes_.size();
  for (const Central &c : central_) {
    AppendLe32(&bytes_, kCentralSig);
    AppendLe16(&bytes_, 20);  // made by
    AppendLe16(&bytes_, kVersion);
    AppendLe16(&bytes_, kUtf8Flag);
    AppendLe16(&bytes_, 0);
    AppendLe16(&bytes_, 0);
    AppendLe16(&bytes_, kDosDate);
    AppendLe32(&bytes_, c.crc);
    AppendLe32(&bytes_, c.size);
    AppendLe32(&bytes_, c.size);
    AppendLe16(&bytes_, static_cast<std::uint16_t>(c.name.size()));
    AppendLe16(&bytes_, 0);  // extra
    AppendLe16(&bytes_, 0);  // comment
    AppendLe16(&bytes_, 0);  // disk
    AppendLe16(&bytes_, 0);  // internal attributes
    AppendLe32(&bytes_, 0);  // external attributes
    AppendLe32(&bytes_, c.local_offset);
    internal::AppendBytes(&bytes_, c.name);
  }
  const std::uint64_t cd_size = bytes_.size() - cd_offset;
  if (bytes_.size() + kEndRecordSize > kMax32) TooLarge();
  AppendLe32(&bytes_, kEndSig);
  AppendLe16(&bytes_, 0);
  AppendLe16(&bytes_, 0);
  AppendLe16(&bytes_, static_cast<std::uint16_t>(central_.size()));
  AppendLe16(&bytes_, static_cast<std::uint16_t>(central_.size()));
  AppendLe32(&bytes_, static_cast<std::uint32_t>(cd_size));
  AppendLe32(&bytes_, static_cast<std::uint32_t>(cd_offset));
  AppendLe16(&bytes_, 0);
  return std::move(bytes_);
}

PackedArchive PackZip(std::span<const NamedBlob> files) {
  ZipWriter writer;
  for (const auto &f : files) writer.Add(f.name, f.data);
  PackedArchive out;
  out.index = writer.index();
  out.bytes = writer.Finish();
  return out;
}

ZipIndex ReadZipIndex(std::span<const std::uint8_t> archive) {
  if (archive.size() < kEndRecordSize)
    throw Error(ErrorCode::kCorruptStream, "too small to be a ZIP archive");
  std::size_t end = archive.size() - kEndRecordSize;
  const std::size_t stop = end > 0xffff ? end - 0xffff : 0;
  while (LoadLe32(archive.data() + end) != kEndSig) {
    if (end == stop) throw Error(ErrorCode::kCorruptStream, "no end-of-directory record");
    --end;
  }
  const std::uint8_t *eocd = archive.data() + end;
  const std::uint16_t count = LoadLe16(eocd + 10);
  const std::uint32_t cd_offset = LoadLe32(eocd + 16);

  ZipIndex index;
  std::size_t pos = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (pos + kCentralHeaderSize > archive.size() ||
        LoadLe32(archive.data() + pos) != kCentralSig)
      throw Error(ErrorCode::kCorruptStream, "bad central directory entry");
    const std::uint8_t *c = archive.data() + pos;
    const std::uint16_t method = LoadLe16(c + 10);
    const std::uint32_t comp_size = LoadLe32(c + 20);
    const std::uint16_t name_len = LoadLe16(c + 28);
    const std::uint16_t extra_len = LoadLe16(c + 30);
    const std::uint16_t comment_len = LoadLe16(c + 32);
    const std::uint32_t local = LoadLe32(c + 42);
    if (pos + kCentralHeaderSize + name_len > archive.size())
      throw Error(ErrorCode::kCorruptStream, "truncated central directory");
    std::string name(reinterpret_cast<const char *>(c + kCentralHeaderSize), name_len);
    if (method != 0)
      throw Error(ErrorCode::kUnsupportedFormat,
                  "entry '" + name + "' is compressed; only stored entries are addressable");
    if (local + kLocalHeaderSize > archive.size() ||
        LoadLe32(archive.data() + local) != kLocalSig)
      throw Error(ErrorCode::kCorruptStream, "bad local header for '" + name + "'");
    const std::uint8_t *l = archive.data() + local;
    const std::uint64_t payload =
        std::uint64_t{local} + kLocalHeaderSize + LoadLe16(l + 26) + LoadLe16(l + 28);
    if (payload + comp_size > archive.size())
      throw Error(ErrorCode::kCorruptStream, "entry '" + name + "' runs past the end");
    index.Add({std::move(name), payload, comp_size});
    pos += kCentralHeaderSize + name_len + extra_len + comment_len;
  }
  return index;
}

}  // namespace s2t
