// src/common/error.cc

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

#include "s2t/error.h"

namespace s2t {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptStream: return "CorruptStream";
    case ErrorCode::kAudioTooShort: return "AudioTooShort";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyStats: return "EmptyStats";
    case ErrorCode::kUnknownTransform: return "UnknownTransform";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kIllegalCharacter: return "IllegalCharacter";
    case ErrorCode::kBadLocator: return "BadLocator";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kRowExceedsBudget: return "RowExceedsBudget";
    case ErrorCode::kMalformedYaml: return "MalformedYaml";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kAgentProtocolViolation: return "AgentProtocolViolation";
    case ErrorCode::kActionBudgetExceeded: return "ActionBudgetExceeded";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kPeerClosed: return "PeerClosed";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace s2t
