// src/simul/evaluate.cc

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

#include "json.hpp"
#include "s2t/simul.h"

namespace s2t {

using nlohmann::json;

CorpusResult EvaluateCorpus(const AgentFactory &factory, std::span<const std::string> ids,
                            std::span<const SimulSource> sources,
                            std::span<const std::string> refs, const SimulOptions &opts) {
  if (ids.size() != sources.size() || refs.size() != sources.size())
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(sources.size()) + " sources, " + std::to_string(ids.size()) +
                    " ids, " + std::to_string(refs.size()) + " references");
  CorpusResult result;
  if (!sources.empty()) result.unit = sources.front().unit();
  for (const auto &s : sources)
    if (s.unit() != result.unit)
      throw Error(ErrorCode::kInvalidArgument, "sources mix word and ms units");

  result.sessions.resize(sources.size());
  const auto count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    SessionOutcome &out = result.sessions[i];
    out.id = ids[i];
    const SessionInfo info{ids[i], sources[i].unit()};
    try {
      auto agent = factory(info);
      out.trace = RunSession(*agent, sources[i], opts.max_actions, info);
    } catch (const SessionAborted &e) {
      out.trace = e.trace();
      out.error = e.what();
    } catch (const std::exception &e) {
      out.trace.delays.src_len = sources[i].length();
      out.error = e.what();
    }
  }

  std::vector<std::string> hyps;
  hyps.reserve(result.sessions.size());
  double al = 0.0, dal = 0.0;
  for (const auto &s : result.sessions) {
    hyps.push_back(s.trace.hypothesis);
    if (!s.trace.finished || s.trace.delays.delays.empty()) continue;
    al += AverageLagging(s.trace.delays);
    dal += DifferentiableAverageLagging(s.trace.delays);
    ++result.latency_count;
  }
  if (result.latency_count) {
    result.al = al / static_cast<double>(result.latency_count);
    result.dal = dal / static_cast<double>(result.latency_count);
  }
  result.regime = RegimeForAl(result.al);
  result.bleu = Bleu(refs, hyps, opts.bleu);

  AddToReport(result.report, result.bleu);
  result.report.Set("al", result.al);
  result.report.Set("dal", result.dal);
  result.report.Set("regime", std::string(RegimeName(result.regime)));
  result.report.Set("unit", std::string(DelayUnitName(result.unit)));
  return result;
}

std::string TraceToJson(const SessionOutcome &outcome, DelayUnit unit) {
  json actions = json::array();
  for (const auto &a : outcome.trace.actions) actions.push_back(json::parse(EncodeAction(a)));
  json j;
  j["id"] = outcome.id;
  j["unit"] = DelayUnitName(unit);
  j["finished"] = outcome.trace.finished;
  if (!outcome.error.empty()) j["error"] = outcome.error;
  j["actions"] = std::move(actions);
  j["delays"] = outcome.trace.delays.delays;
  j["src_len"] = outcome.trace.delays.src_len;
  j["hyp"] = outcome.trace.hypothesis;
  return j.dump();
}

SessionOutcome TraceFromJson(std::string_view line) {
  const json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::kProtocolError, "trace line is not a JSON object");
  SessionOutcome out;
  try {
    out.id = j.at("id").get<std::string>();
    for (const auto &a : j.at("actions")) {
      out.trace.actions.push_back(DecodeAction(a.dump()));
      const Action &act = out.trace.actions.back();
      if (act.kind == ActionKind::kWrite && !act.token.empty())
        out.trace.tokens.push_back(act.token);
    }
    out.trace.delays.delays = j.at("delays").get<std::vector<double>>();
    out.trace.delays.src_len = j.at("src_len").get<double>();
    out.trace.hypothesis = j.at("hyp").get<std::string>();
    out.trace.finished = j.at("finished").get<bool>();
    if (const auto e = j.find("error"); e != j.end()) out.error = e->get<std::string>();
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kProtocolError, std::string("bad trace line: ") + e.what());
  }
  return out;
}

}  // namespace s2t
