// src/simul/protocol.cc

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

#include <charconv>

#include "json.hpp"
#include "s2t/simul.h"

namespace s2t {
namespace {

using nlohmann::json;

json ParseLine(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::kProtocolError, "not a JSON object: " + std::string(line));
  const auto t = j.find("t");
  if (t == j.end() || !t->is_string())
    throw Error(ErrorCode::kProtocolError, "missing message type: " + std::string(line));
  return j;
}

std::vector<std::string> StringList(const json &j, const char *key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array())
    throw Error(ErrorCode::kProtocolError, std::string("missing list '") + key + "'");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto &v : *it) {
    if (!v.is_string())
      throw Error(ErrorCode::kProtocolError, std::string("non-string in '") + key + "'");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string EncodeBegin(const SessionInfo &info) {
  return json{{"t", "begin"}, {"id", info.id}, {"unit", DelayUnitName(info.unit)}}.dump();
}

std::string EncodeState(const SessionView &view) {
  json j;
  j["t"] = "state";
  j["src"] = std::vector<std::string>(view.source.begin(), view.source.end());
  j["src_done"] = view.source_done;
  j["hyp"] = std::vector<std::string>(view.emitted.begin(), view.emitted.end());
  return j.dump();
}

std::string EncodeEnd() { return R"({"t":"end"})"; }

std::string EncodeAction(const Action &a) {
  if (a.kind == ActionKind::kRead) return R"({"t":"read"})";
  if (a.is_final && a.token.empty()) return R"({"t":"final"})";
  json j{{"t", "write"}, {"token", a.token}};
  if (a.is_final) j["final"] = true;
  return j.dump();
}

Action DecodeAction(std::string_view line) {
  const json j = ParseLine(line);
  const std::string t = j["t"].get<std::string>();
  if (t == "read") return Action::Read();
  if (t == "final") return Action::Final();
  if (t == "write") {
    const auto tok = j.find("token");
    if (tok == j.end() || !tok->is_string())
      throw Error(ErrorCode::kProtocolError, "write without string token");
    Action a = Action::Write(tok->get<std::string>());
    if (const auto fin = j.find("final"); fin != j.end()) {
      if (!fin->is_boolean())
        throw Error(ErrorCode::kProtocolError, "'final' must be a boolean");
      a.is_final = fin->get<bool>();
    }
    if (a.token.empty() && !a.is_final)
      throw Error(ErrorCode::kProtocolError, "write with empty token");
    return a;
  }
  throw Error(ErrorCode::kProtocolError, "unknown verb '" + t + "'");
}

void ExternalAgent::Begin(const SessionInfo &info) {
  channel_->WriteLine(EncodeBegin(info));
}

Action ExternalAgent::Step(const SessionView &view) {
  channel_->WriteLine(EncodeState(view));
  const auto line = channel_->ReadLine();
  if (!line) throw Error(ErrorCode::kPeerClosed, "agent closed the connection");
  return DecodeAction(*line);
}

void ExternalAgent::End() {
  // The peer may already have hung up after its final action.
  try {
    channel_->WriteLine(EncodeEnd());
  } catch (const Error &) {
  }
}

std::size_t ServeAgent(LineChannel &channel, const AgentFactory &factory) {
  std::unique_ptr<Agent> agent;
  std::size_t served = 0;
  while (auto line = channel.ReadLine()) {
    if (line->empty()) continue;
    const json j = ParseLine(*line);
    const std::string t = j["t"].get<std::string>();
    if (t == "begin") {
      SessionInfo info;
      if (const auto id = j.find("id"); id != j.end() && id->is_string())
        info.id = id->get<std::string>();
      if (const auto unit = j.find("unit"); unit != j.end() && unit->is_string())
        info.unit = ParseDelayUnit(unit->get<std::string>());
      agent = factory(info);
      agent->Begin(info);
    } else if (t == "state") {
      if (!agent) throw Error(ErrorCode::kProtocolError, "state before begin");
      const auto src = StringList(j, "src");
      const auto hyp = StringList(j, "hyp");
      const auto done = j.find("src_done");
      if (done == j.end() || !done->is_boolean())
        throw Error(ErrorCode::kProtocolError, "missing src_done");
      const SessionView view{src, done->get<bool>(), hyp};
      channel.WriteLine(EncodeAction(agent->Step(view)));
    } else if (t == "end") {
      if (agent) {
        agent->End();
        agent.reset();
        ++served;
      }
    } else {
      throw Error(ErrorCode::kProtocolError, "unknown message '" + t + "'");
    }
  }
  return served;
}

AgentFactory MakeAgentFactory(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string arg = colon == std::string_view::npos
                              ? std::string()
                              : std::string(spec.substr(colon + 1));
  if (kind == "waitk") {
    int k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || k < 1)
      throw Error(ErrorCode::kInvalidArgument, "waitk needs a positive integer k");
    return [k](const SessionInfo &) { return std::make_unique<WaitkAgent>(k); };
  }
  if (kind == "exec" && !arg.empty()) {
    return [arg](const SessionInfo &) {
      return std::make_unique<ExternalAgent>(SpawnAgentProcess(arg));
    };
  }
  if (kind == "tcp") {
    const auto pc = arg.rfind(':');
    int port = 0;
    if (pc != std::string::npos && pc > 0) {
      const auto [ptr, ec] = std::from_chars(arg.data() + pc + 1, arg.data() + arg.size(), port);
      if (ec != std::errc() || ptr != arg.data() + arg.size()) port = 0;
    }
    if (port < 1 || port > 65535)
      throw Error(ErrorCode::kInvalidArgument, "tcp agent needs HOST:PORT");
    std::string host = arg.substr(0, pc);
    if (host.size() > 2 && host.front() == '[' && host.back() == ']')
      host = host.substr(1, host.size() - 2);
    return [host, port](const SessionInfo &) {
      return std::make_unique<ExternalAgent>(ConnectTcp(host, port));
    };
  }
  throw Error(ErrorCode::kInvalidArgument,
              "agent must be waitk:K, exec:CMD or tcp:HOST:PORT, got '" +
                  std::string(spec) + "'");
}

}  // namespace s2t
