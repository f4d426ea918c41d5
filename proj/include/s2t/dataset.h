// include/s2t/dataset.h

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

#ifndef S2T_DATASET_H_
#define S2T_DATASET_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace s2t {

/// One utterance in a TSV manifest.
struct ManifestRow {
  std::string id;
  std::string audio;  // "path" or "archive.zip:offset:length"
  std::uint64_t n_frames = 0;
  std::string tgt_text;
  std::optional<std::string> src_text;
  std::optional<std::string> speaker;

  bool operator==(const ManifestRow &) const = default;
};

/// Header "id\taudio\tn_frames\ttgt_text" plus src_text / speaker columns
/// when any row carries them. Fields may not contain tabs or newlines.
std::string WriteManifest(std::span<const ManifestRow> rows);
std::vector<ManifestRow> ReadManifest(std::string_view tsv);

std::vector<ManifestRow> LoadManifest(const std::string &path);
void SaveManifest(const std::string &path, std::span<const ManifestRow> rows);

inline constexpr std::uint64_t kDefaultMaxFrames = 3000;

struct FilterResult {
  std::vector<ManifestRow> kept;
  std::size_t dropped = 0;
};

/// Keeps rows with n_frames <= max_frames, in order.
FilterResult FilterByFrames(std::vector<ManifestRow> rows,
                            std::uint64_t max_frames = kDefaultMaxFrames);

/// Sorts by descending n_frames (stable) and packs greedily so that each
/// batch's frame total stays within the budget.
std::vector<std::vector<ManifestRow>> BucketBatches(
    std::span<const ManifestRow> rows, std::uint64_t max_frames_per_batch);

// ---------------------------------------------------------------------------
// ZIP archives (stored entries only)

struct ZipEntry {
  std::string name;
  std::uint64_t offset = 0;  // payload start, past the local header
  std::uint64_t length = 0;

  bool operator==(const ZipEntry &) const = default;
};

class ZipIndex {
 public:
  void Add(ZipEntry e);
  const ZipEntry *Find(std::string_view name) const;
  const std::vector<ZipEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<ZipEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

struct NamedBlob {
  std::string name;
  std::vector<std::uint8_t> data;
};

/// Builds a method-0 archive in memory; Finish() appends the central
/// directory. Entry timestamps are fixed so archives are reproducible.
class ZipWriter {
 public:
  ZipWriter();
  ~ZipWriter();
  ZipWriter(const ZipWriter &) = delete;
  ZipWriter &operator=(const ZipWriter &) = delete;

  const ZipEntry &Add(const std::string &name, std::span<const std::uint8_t> data);
  /// Returns the finished archive bytes; the writer is spent afterwards.
  std::vector<std::uint8_t> Finish();
  const ZipIndex &index() const { return index_; }

 private:
  struct Central;
  std::vector<std::uint8_t> bytes_;
  std::vector<Central> central_;
  ZipIndex index_;
  bool finished_ = false;
};

struct PackedArchive {
  std::vector<std::uint8_t> bytes;
  ZipIndex index;
};

PackedArchive PackZip(std::span<const NamedBlob> files);

/// Rebuilds the index of a stored-entry archive from its central directory.
ZipIndex ReadZipIndex(std::span<const std::uint8_t> archive);

// ---------------------------------------------------------------------------
// Locators and byte stores

struct Locator {
  std::string path;
  std::optional<std::uint64_t> offset;
  std::optional<std::uint64_t> length;

  bool is_range() const { return offset.has_value(); }
  std::string ToString() const;
};

Locator ParseLocator(std::string_view locator);

class ByteStore {
 public:
  virtual ~ByteStore() = default;
  virtual std::vector<std::uint8_t> Read(const std::string &path) const = 0;
  virtual std::vector<std::uint8_t> ReadRange(const std::string &path,
                                              std::uint64_t offset,
                                              std::uint64_t length) const = 0;
};

/// Paths relative to a root directory; absolute paths are used as is.
class DirectoryStore : public ByteStore {
 public:
  explicit DirectoryStore(std::string root) : root_(std::move(root)) {}
  std::vector<std::uint8_t> Read(const std::string &path) const override;
  std::vector<std::uint8_t> ReadRange(const std::string &path,
                                      std::uint64_t offset,
                                      std::uint64_t length) const override;
  std::string Resolve(const std::string &path) const;

 private:
  std::string root_;
};

class MemoryStore : public ByteStore {
 public:
  void Put(const std::string &path, std::vector<std::uint8_t> bytes) {
    files_[path] = std::move(bytes);
  }
  std::vector<std::uint8_t> Read(const std::string &path) const override;
  std::vector<std::uint8_t> ReadRange(const std::string &path,
                                      std::uint64_t offset,
                                      std::uint64_t length) const override;

 private:
  std::map<std::string, std::vector<std::uint8_t>> files_;
};

std::vector<std::uint8_t> ResolveAudio(std::string_view locator,
                                       const ByteStore &store);

std::vector<std::uint8_t> ReadFileBytes(const std::string &path);
void WriteFileBytes(const std::string &path, std::span<const std::uint8_t> bytes);
void WriteFileText(const std::string &path, std::string_view text);

}  // namespace s2t

#endif  // S2T_DATASET_H_
