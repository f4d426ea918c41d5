// src/common/text.h

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

#ifndef S2T_SRC_COMMON_TEXT_H_
#define S2T_SRC_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace s2t::internal {

/// Code points of a UTF-8 string. Invalid bytes decode as U+FFFD so that
/// scoring never fails on odd input.
std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);

/// Same set Python's str.split() treats as whitespace.
bool IsUnicodeSpace(char32_t c);

/// Splits on runs of Unicode whitespace; no empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string_view TrimAscii(std::string_view s);

std::vector<std::string> SplitOn(std::string_view s, char sep);

}  // namespace s2t::internal

#endif  // S2T_SRC_COMMON_TEXT_H_
