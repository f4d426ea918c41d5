// src/dataset/data_config.cc

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

#include "s2t/data_config.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>

#include "s2t/dataset.h"
#include "s2t/error.h"

namespace s2t {
namespace {

[[noreturn]] void Schema(const std::string &what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

template <typename T>
T ScalarAs(const YAML::Node &node, const std::string &key) {
  if (!node.IsScalar()) Schema("'" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion &) {
    Schema("'" + key + "' has the wrong type: '" + node.Scalar() + "'");
  }
}

std::vector<std::string> NameList(const YAML::Node &node, const std::string &key) {
  if (node.IsNull()) return {};
  if (!node.IsSequence()) Schema("'" + key + "' must be a list of transform names");
  std::vector<std::string> names;
  for (const auto &n : node) names.push_back(ScalarAs<std::string>(n, key));
  return names;
}

std::vector<double> DoubleList(const YAML::Node &node, const std::string &key) {
  if (!node || !node.IsSequence()) Schema("'" + key + "' must be a list of numbers");
  std::vector<double> v;
  for (const auto &n : node) v.push_back(ScalarAs<double>(n, key));
  return v;
}

bool SplitMatches(std::string_view pattern, std::string_view split) {
  if (pattern == split) return true;
  if (pattern.size() > 1 && pattern.front() == '_')
    return split.find(pattern.substr(1)) != std::string_view::npos;
  return false;
}

}  // namespace

bool operator==(const CmvnMoments &a, const CmvnMoments &b) {
  return a.mean == b.mean && a.stddev == b.stddev;
}

bool DataConfig::operator==(const DataConfig &o) const {
  return audio_root == o.audio_root &&
         input_feat_per_channel == o.input_feat_per_channel &&
         sample_rate == o.sample_rate && transforms == o.transforms &&
         transform_params == o.transform_params && gcmvn == o.gcmvn &&
         extra == o.extra;
}

std::vector<std::string> DataConfig::TransformsForSplit(std::string_view split) const {
  const TransformDeclaration *fallback = nullptr;
  for (const auto &decl : transforms) {
    if (decl.pattern == "*") {
      if (!fallback) fallback = &decl;
      continue;
    }
    if (SplitMatches(decl.pattern, split)) return decl.names;
  }
  return fallback ? fallback->names : std::vector<std::string>{};
}

const ParamMap *DataConfig::ParamsFor(std::string_view name) const {
  const auto it = transform_params.find(std::string(name));
  return it == transform_params.end() ? nullptr : &it->second;
}

std::string WriteDataConfig(const DataConfig &cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "audio_root" << YAML::Value << cfg.audio_root;
  out << YAML::Key << "input_feat_per_channel" << YAML::Value
      << cfg.input_feat_per_channel;
  out << YAML::Key << "sample_rate" << YAML::Value << cfg.sample_rate;
  if (!cfg.transforms.empty()) {
    out << YAML::Key << "transforms" << YAML::Value << YAML::BeginMap;
    for (const auto &decl : cfg.transforms) {
      out << YAML::Key << decl.pattern << YAML::Value << YAML::Flow
          << YAML::BeginSeq;
      for (const auto &n : decl.names) out << n;
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  for (const auto &[name, params] : cfg.transform_params) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    for (const auto &[k, v] : params) out << YAML::Key << k << YAML::Value << v;
    out << YAML::EndMap;
  }
  if (cfg.gcmvn) {
    out << YAML::Key << "gcmvn" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "mean" << YAML::Value << YAML::Flow << cfg.gcmvn->mean;
    out << YAML::Key << "std" << YAML::Value << YAML::Flow << cfg.gcmvn->stddev;
    out << YAML::EndMap;
  }
  for (const auto &[key, text] : cfg.extra)
    out << YAML::Key << key << YAML::Value << YAML::Load(text);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

DataConfig ReadDataConfig(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception &e) {
    throw Error(ErrorCode::kMalformedYaml, e.what());
  }
  DataConfig cfg;
  if (!root || root.IsNull()) return cfg;
  if (!root.IsMap()) Schema("top level of the data config must be a mapping");

  std::set<std::string> declared;
  if (const YAML::Node t = root["transforms"]; t && t.IsMap()) {
    for (const auto &kv : t)
      for (const auto &n : NameList(kv.second, "transforms"))
        declared.insert(n);
  } else if (t && t.IsSequence()) {
    for (const auto &n : NameList(t, "transforms")) declared.insert(n);
  }

  std::set<std::string> seen;
  for (const auto &kv : root) {
    const std::string key = ScalarAs<std::string>(kv.first, "key");
    const YAML::Node &value = kv.second;
    if (!seen.insert(key).second) Schema("duplicate key '" + key + "'");
    if (key == "audio_root") {
      cfg.audio_root = value.IsNull() ? "" : ScalarAs<std::string>(value, key);
    } else if (key == "input_feat_per_channel") {
      cfg.input_feat_per_channel = ScalarAs<int>(value, key);
      if (cfg.input_feat_per_channel < 1) Schema("input_feat_per_channel must be >= 1");
    } else if (key == "sample_rate") {
      cfg.sample_rate = ScalarAs<int>(value, key);
      if (cfg.sample_rate < 1) Schema("sample_rate must be >= 1");
    } else if (key == "transforms") {
      if (value.IsSequence()) {
        cfg.transforms.push_back({"*", NameList(value, key)});
      } else if (value.IsMap()) {
        for (const auto &decl : value)
          cfg.transforms.push_back({ScalarAs<std::string>(decl.first, key),
                                    NameList(decl.second, key)});
      } else if (!value.IsNull()) {
        Schema("'transforms' must map split patterns to transform lists");
      }
    } else if (key == "gcmvn") {
      if (!value.IsMap()) Schema("'gcmvn' must be a mapping with mean and std");
      CmvnMoments m;
      m.mean = DoubleList(value["mean"], "gcmvn.mean");
      m.stddev = DoubleList(value["std"], "gcmvn.std");
      if (m.mean.size() != m.stddev.size())
        Schema("gcmvn mean and std lengths differ");
      cfg.gcmvn = std::move(m);
    } else if (declared.count(key) && value.IsMap()) {
      ParamMap params;
      for (const auto &p : value) {
        const std::string pk = ScalarAs<std::string>(p.first, key);
        params[pk] = ScalarAs<std::string>(p.second, key + "." + pk);
      }
      cfg.transform_params[key] = std::move(params);
    } else {
      YAML::Emitter e;
      e << value;
      cfg.extra.emplace_back(key, e.c_str());
      cfg.warnings.push_back("unknown key '" + key + "' preserved");
    }
  }
  return cfg;
}

DataConfig LoadDataConfig(const std::string &path) {
  const auto bytes = ReadFileBytes(path);
  return ReadDataConfig(
      std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
}

void SaveDataConfig(const std::string &path, const DataConfig &cfg) {
  WriteFileText(path, WriteDataConfig(cfg));
}

}  // namespace s2t
