// tests/test_util.h

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

#ifndef S2T_TESTS_TEST_UTIL_H_
#define S2T_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "s2t/error.h"
#include "s2t/features.h"
#include "s2t/rng.h"

namespace s2t::testing {

/// Code of the s2t::Error thrown by fn, or nullopt if it returns normally.
inline std::optional<ErrorCode> CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string DataPath(const std::string &name) {
  return std::string(S2T_TEST_DATA_DIR) + "/" + name;
}

inline std::vector<std::uint8_t> ReadData(const std::string &name) {
  std::ifstream in(DataPath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("s2t_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::string operator/(const std::string &name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline FeatureMatrix RandomMatrix(std::size_t rows, std::size_t cols, Rng &rng,
                                  double scale = 5.0, double offset = 0.0) {
  FeatureMatrix m(rows, cols);
  for (float &v : m.data()) v = static_cast<float>(offset + scale * rng.Gauss());
  return m;
}

struct ColumnMoments {
  std::vector<double> mean, stddev;
};

/// Population moments per column, two passes in long double.
inline ColumnMoments Moments(const FeatureMatrix &m) {
  ColumnMoments r;
  const std::size_t t = m.num_frames(), f = m.feature_dim();
  r.mean.assign(f, 0.0);
  r.stddev.assign(f, 0.0);
  for (std::size_t c = 0; c < f; ++c) {
    long double s = 0;
    for (std::size_t i = 0; i < t; ++i) s += m(i, c);
    const long double mu = s / t;
    long double v = 0;
    for (std::size_t i = 0; i < t; ++i) v += (m(i, c) - mu) * (m(i, c) - mu);
    r.mean[c] = static_cast<double>(mu);
    r.stddev[c] = std::sqrt(static_cast<double>(v / t));
  }
  return r;
}

}  // namespace s2t::testing

#endif  // S2T_TESTS_TEST_UTIL_H_
