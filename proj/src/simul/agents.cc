// src/simul/agents.cc

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

#include "s2t/simul.h"

namespace s2t {

WaitkAgent::WaitkAgent(int k) : k_(0) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "wait-k needs k >= 1");
  k_ = static_cast<std::size_t>(k);
}

WaitkAgent::WaitkAgent(int k, std::vector<std::string> script) : WaitkAgent(k) {
  script_ = std::move(script);
}

Action WaitkAgent::Step(const SessionView &view) {
  const std::size_t i = view.emitted.size();
  const std::size_t visible = view.source.size();
  if (script_) {
    if (i >= script_->size()) return Action::Final();
    if (visible < k_ + i && !view.source_done) return Action::Read();
    return Action::Write((*script_)[i]);
  }
  if (i >= visible && view.source_done) return Action::Final();
  if (visible < k_ + i && !view.source_done) return Action::Read();
  return Action::Write(view.source[i]);
}

Action ReplayAgent::Step(const SessionView &) {
  if (next_ >= actions_.size())
    throw Error(ErrorCode::kAgentProtocolViolation, "replayed action stream exhausted");
  return actions_[next_++];
}

}  // namespace s2t
