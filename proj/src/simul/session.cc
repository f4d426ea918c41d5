// src/simul/session.cc

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

#include <cmath>

#include "common/text.h"
#include "s2t/simul.h"

namespace s2t {
namespace {

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::string ActionString(const Action &a) {
  if (a.kind == ActionKind::kRead) return "R";
  if (a.is_final) return a.token.empty() ? "F" : "WF:" + a.token;
  return "W:" + a.token;
}

std::string_view DelayUnitName(DelayUnit u) {
  return u == DelayUnit::kMs ? "ms" : "word";
}

DelayUnit ParseDelayUnit(std::string_view s) {
  if (s == "word") return DelayUnit::kWord;
  if (s == "ms") return DelayUnit::kMs;
  throw Error(ErrorCode::kInvalidArgument, "unit must be word or ms, got '" +
                                               std::string(s) + "'");
}

double SimulSource::length() const {
  if (end_ms.empty()) return static_cast<double>(segments.size());
  return end_ms.back();
}

double SimulSource::DelayAt(std::size_t read_count) const {
  if (end_ms.empty()) return static_cast<double>(read_count);
  return read_count == 0 ? 0.0 : end_ms[read_count - 1];
}

SimulSource WordSource(std::string_view text) {
  SimulSource s;
  s.segments = internal::SplitWhitespace(text);
  return s;
}

SimulSource ChunkSource(std::string_view id, std::size_t num_frames,
                        double frame_shift_ms, double chunk_ms) {
  if (!(frame_shift_ms > 0.0) || !(chunk_ms > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "chunk and frame shift must be positive");
  SimulSource s;
  const double total = static_cast<double>(num_frames) * frame_shift_ms;
  const auto chunks = static_cast<std::size_t>(std::ceil(total / chunk_ms));
  for (std::size_t j = 0; j < chunks; ++j) {
    s.segments.push_back(std::string(id) + "#" + std::to_string(j));
    s.end_ms.push_back(std::min(total, chunk_ms * static_cast<double>(j + 1)));
  }
  return s;
}

DelaySequence ReconstructDelays(std::span<const Action> actions,
                                const SimulSource &source) {
  DelaySequence d;
  d.src_len = source.length();
  std::size_t reads = 0;
  for (const Action &a : actions) {
    if (a.kind == ActionKind::kRead) {
      if (reads < source.segments.size()) ++reads;
    } else if (!a.token.empty()) {
      d.delays.push_back(source.DelayAt(reads));
    }
  }
  return d;
}

SimulTrace RunSession(Agent &agent, const SimulSource &source, std::size_t max_actions,
                      const SessionInfo &info) {
  SimulTrace trace;
  trace.delays.src_len = source.length();
  const std::size_t n = source.segments.size();
  std::size_t read_count = 0;
  bool forced = false;
  std::size_t steps = 0;

  auto abort = [&](ErrorCode code, const std::string &what) {
    trace.finished = false;
    trace.hypothesis = JoinTokens(trace.tokens);
    throw SessionAborted(code, what, trace);
  };

  try {
    agent.Begin(info);
    while (true) {
      if (steps >= max_actions)
        abort(ErrorCode::kActionBudgetExceeded,
              "session " + info.id + " exceeded " + std::to_string(max_actions) + " actions");
      ++steps;
      const SessionView view{
          std::span<const std::string>(source.segments.data(), read_count),
          read_count == n, trace.tokens};
      const Action a = agent.Step(view);

      if (a.kind == ActionKind::kRead) {
        if (!a.token.empty() || a.is_final)
          abort(ErrorCode::kAgentProtocolViolation, "READ carries a token");
        if (read_count < n) {
          ++read_count;
          trace.actions.push_back(a);
        } else if (forced) {
          abort(ErrorCode::kAgentProtocolViolation,
                "READ after the source ended and a WRITE was required");
        } else {
          forced = true;
        }
        continue;
      }

      if (a.token.empty() && !a.is_final)
        abort(ErrorCode::kAgentProtocolViolation, "WRITE without token");
      trace.actions.push_back(a);
      forced = false;
      if (!a.token.empty()) {
        trace.tokens.push_back(a.token);
        trace.delays.delays.push_back(source.DelayAt(read_count));
      }
      if (a.is_final) break;
    }
    agent.End();
  } catch (const SessionAborted &) {
    throw;
  } catch (const Error &e) {
    trace.hypothesis = JoinTokens(trace.tokens);
    throw SessionAborted(e.code(), e.what(), trace);
  }

  trace.finished = true;
  trace.hypothesis = JoinTokens(trace.tokens);
  return trace;
}

}  // namespace s2t
