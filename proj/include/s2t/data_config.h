// include/s2t/data_config.h

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

#ifndef S2T_DATA_CONFIG_H_
#define S2T_DATA_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s2t/features.h"

namespace s2t {

/// Scalar parameters of one transform, kept as their YAML text.
using ParamMap = std::map<std::string, std::string>;

/// Transform list for splits matching `pattern`: "_train" matches any split
/// containing "train", "*" is the fallback, anything else matches exactly.
struct TransformDeclaration {
  std::string pattern;
  std::vector<std::string> names;

  bool operator==(const TransformDeclaration &) const = default;
};

struct DataConfig {
  std::string audio_root;
  int input_feat_per_channel = 80;
  int sample_rate = 16000;
  std::vector<TransformDeclaration> transforms;
  /// Top-level mappings named after a declared transform.
  std::map<std::string, ParamMap> transform_params;
  std::optional<CmvnMoments> gcmvn;
  /// Unrecognized top-level keys, preserved verbatim as YAML text.
  std::vector<std::pair<std::string, std::string>> extra;
  /// Read-time diagnostics; not part of the configuration's value.
  std::vector<std::string> warnings;

  std::vector<std::string> TransformsForSplit(std::string_view split) const;
  const ParamMap *ParamsFor(std::string_view name) const;

  bool operator==(const DataConfig &other) const;
};

bool operator==(const CmvnMoments &a, const CmvnMoments &b);

std::string WriteDataConfig(const DataConfig &cfg);
DataConfig ReadDataConfig(std::string_view yaml);

DataConfig LoadDataConfig(const std::string &path);
void SaveDataConfig(const std::string &path, const DataConfig &cfg);

}  // namespace s2t

#endif  // S2T_DATA_CONFIG_H_
