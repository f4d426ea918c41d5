// src/scorers/tokenize.cc

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
#include <string>

#include "common/text.h"
#include "s2t/scorers.h"

namespace s2t {
namespace {

void ReplaceAll(std::string &s, std::string_view from, std::string_view to) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = s.find(from, pos);
    if (hit == std::string::npos) break;
    out.append(s, pos, hit - pos);
    out.append(to);
    pos = hit + from.size();
  }
  out.append(s, pos, std::string::npos);
  s = std::move(out);
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// {-~ [-` space-& (-+ :-@ /
bool IsSplitPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 0x7b && u <= 0x7e) || (u >= 0x5b && u <= 0x60) ||
         (u >= 0x20 && u <= 0x26) || (u >= 0x28 && u <= 0x2b) ||
         (u >= 0x3a && u <= 0x40) || u == '/';
}

// Left-to-right, non-overlapping rewrite of two-character matches, the way
// a regex substitution scans.
template <typename Match, typename Emit>
std::string RewritePairs(const std::string &s, Match match, Emit emit) {
  std::string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && match(s[i], s[i + 1])) {
      emit(out, s[i], s[i + 1]);
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::string Tokenize13a(std::string_view line) {
  std::string s(line);
  ReplaceAll(s, "<skipped>", "");
  ReplaceAll(s, "-\n", "");
  ReplaceAll(s, "\n", " ");
  if (s.find('&') != std::string::npos) {
    ReplaceAll(s, "&quot;", "\"");
    ReplaceAll(s, "&amp;", "&");
    ReplaceAll(s, "&lt;", "<");
    ReplaceAll(s, "&gt;", ">");
  }
  s = " " + s + " ";

  std::string t;
  t.reserve(s.size() * 2);
  for (char c : s) {
    if (IsSplitPunct(c)) {
      t.push_back(' ');
      t.push_back(c);
      t.push_back(' ');
    } else {
      t.push_back(c);
    }
  }
  // Bytes >= 0x80 never match a digit or punctuation class, so a byte scan
  // agrees with a code point scan here.
  t = RewritePairs(
      t, [](char a, char b) { return !IsDigit(a) && (b == '.' || b == ','); },
      [](std::string &o, char a, char b) {
        o.push_back(a);
        o.push_back(' ');
        o.push_back(b);
        o.push_back(' ');
      });
  t = RewritePairs(
      t, [](char a, char b) { return (a == '.' || a == ',') && !IsDigit(b); },
      [](std::string &o, char a, char b) {
        o.push_back(' ');
        o.push_back(a);
        o.push_back(' ');
        o.push_back(b);
      });
  t = RewritePairs(
      t, [](char a, char b) { return IsDigit(a) && b == '-'; },
      [](std::string &o, char a, char b) {
        o.push_back(a);
        o.push_back(' ');
        o.push_back(b);
        o.push_back(' ');
      });

  const auto tokens = internal::SplitWhitespace(t);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> TokenizeForBleu(std::string_view line, BleuTokenizer tok) {
  if (tok == BleuTokenizer::kWord13a) return internal::SplitWhitespace(Tokenize13a(line));
  std::vector<std::string> chars;
  for (char32_t c : internal::DecodeUtf8(line)) {
    if (internal::IsUnicodeSpace(c)) continue;
    chars.push_back(internal::EncodeUtf8(std::u32string_view(&c, 1)));
  }
  return chars;
}

BleuTokenizer TokenizerForLanguage(std::string_view lang) {
  const std::string_view base = lang.substr(0, std::min<std::size_t>(lang.size(), 2));
  if (base == "zh" || base == "ja") return BleuTokenizer::kChar;
  return BleuTokenizer::kWord13a;
}

}  // namespace s2t
