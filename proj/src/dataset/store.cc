// src/dataset/store.cc

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

#include <charconv>
#include <filesystem>
#include <fstream>

#include "common/text.h"
#include "s2t/dataset.h"
#include "s2t/error.h"

namespace fs = std::filesystem;

namespace s2t {
namespace {

bool IsDecimal(std::string_view s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

std::uint64_t ParseDecimal(std::string_view s, std::string_view locator) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kBadLocator,
                "offset/length out of range in '" + std::string(locator) + "'");
  return v;
}

void CheckRange(std::uint64_t size, std::uint64_t offset, std::uint64_t length,
                const std::string &path) {
  if (offset > size || length > size - offset)
    throw Error(ErrorCode::kOutOfBounds,
                "range [" + std::to_string(offset) + ", +" + std::to_string(length) +
                    ") exceeds the " + std::to_string(size) + "-byte file '" +
                    path + "'");
}

}  // namespace

std::string Locator::ToString() const {
  if (!is_range()) return path;
  return path + ":" + std::to_string(*offset) + ":" + std::to_string(*length);
}

Locator ParseLocator(std::string_view locator) {
  if (locator.empty()) throw Error(ErrorCode::kBadLocator, "empty locator");
  const auto parts = internal::SplitOn(locator, ':');
  Locator loc;
  if (parts.size() >= 3 && IsDecimal(parts[parts.size() - 1]) &&
      IsDecimal(parts[parts.size() - 2])) {
    const auto cut = locator.size() - parts.back().size() -
                     parts[parts.size() - 2].size() - 2;
    loc.path = std::string(locator.substr(0, cut));
    loc.offset = ParseDecimal(parts[parts.size() - 2], locator);
    loc.length = ParseDecimal(parts.back(), locator);
    if (loc.path.empty())
      throw Error(ErrorCode::kBadLocator, "missing archive path in '" +
                                              std::string(locator) + "'");
    return loc;
  }
  if (locator.find(".zip:") != std::string_view::npos)
    throw Error(ErrorCode::kBadLocator,
                "expected 'archive.zip:offset:length', got '" + std::string(locator) + "'");
  loc.path = std::string(locator);
  return loc;
}

std::vector<std::uint8_t> ResolveAudio(std::string_view locator,
                                       const ByteStore &store) {
  const Locator loc = ParseLocator(locator);
  if (loc.is_range()) return store.ReadRange(loc.path, *loc.offset, *loc.length);
  return store.Read(loc.path);
}

std::string DirectoryStore::Resolve(const std::string &path) const {
  const fs::path p(path);
  if (p.is_absolute() || root_.empty()) return p.string();
  return (fs::path(root_) / p).string();
}

std::vector<std::uint8_t> DirectoryStore::Read(const std::string &path) const {
  return ReadFileBytes(Resolve(path));
}

std::vector<std::uint8_t> DirectoryStore::ReadRange(const std::string &path,
                                                    std::uint64_t offset,
                                                    std::uint64_t length) const {
  const std::string full = Resolve(path);
  std::ifstream in(full, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + full + "'");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::uint64_t>(in.tellg());
  CheckRange(size, offset, length, full);
  std::vector<std::uint8_t> out(length);
  in.seekg(static_cast<std::streamoff>(offset));
  in.read(reinterpret_cast<char *>(out.data()), static_cast<std::streamsize>(length));
  if (!in) throw Error(ErrorCode::kIoError, "short read from '" + full + "'");
  return out;
}

std::vector<std::uint8_t> MemoryStore::Read(const std::string &path) const {
  const auto it = files_.find(path);
  if (it == files_.end()) throw Error(ErrorCode::kNotFound, "no file '" + path + "'");
  return it->second;
}

std::vector<std::uint8_t> MemoryStore::ReadRange(const std::string &path,
                                                 std::uint64_t offset,
                                                 std::uint64_t length) const {
  const auto it = files_.find(path);
  if (it == files_.end()) throw Error(ErrorCode::kNotFound, "no file '" + path + "'");
  CheckRange(it->second.size(), offset, length, path);
  const auto begin = it->second.begin() + static_cast<std::ptrdiff_t>(offset);
  return {begin, begin + static_cast<std::ptrdiff_t>(length)};
}

std::vector<std::uint8_t> ReadFileBytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  std::vector<std::uint8_t> out(size);
  in.seekg(0);
  in.read(reinterpret_cast<char *>(out.data()), static_cast<std::streamsize>(size));
  if (!in) throw Error(ErrorCode::kIoError, "short read from '" + path + "'");
  return out;
}

void WriteFileBytes(const std::string &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

void WriteFileText(const std::string &path, std::string_view text) {
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()),
                                 text.size()));
}

}  // namespace s2t
