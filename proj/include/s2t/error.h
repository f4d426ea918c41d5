// include/s2t/error.h

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

#ifndef S2T_ERROR_H_
#define S2T_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace s2t {

enum class ErrorCode {
  kInvalidArgument,
  kUnsupportedFormat,
  kCorruptStream,
  kAudioTooShort,
  kDimensionMismatch,
  kEmptyStats,
  kUnknownTransform,
  kBadParams,
  kDuplicateName,
  kMalformedRow,
  kIllegalCharacter,
  kBadLocator,
  kOutOfBounds,
  kNotFound,
  kRowExceedsBudget,
  kMalformedYaml,
  kSchemaViolation,
  kLengthMismatch,
  kEmptyReference,
  kEmptyCorpus,
  kAgentProtocolViolation,
  kActionBudgetExceeded,
  kProtocolError,
  kPeerClosed,
  kUnknownId,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Every failure raised by the toolkit carries one of the codes above, so
/// callers (tests, the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace s2t

#endif  // S2T_ERROR_H_
