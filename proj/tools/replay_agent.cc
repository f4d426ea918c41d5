// tools/replay_agent.cc

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

// Streaming agent that replays recorded sessions over the line protocol.
// Usage: s2t-replay-agent TRACES.jsonl            (stdin/stdout)
//        s2t-replay-agent TRACES.jsonl --listen PORT

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "s2t/dataset.h"
#include "s2t/simul.h"

namespace {

std::map<std::string, std::vector<s2t::Action>> LoadTraces(const std::string &path) {
  const auto bytes = s2t::ReadFileBytes(path);
  const std::string text(bytes.begin(), bytes.end());
  std::map<std::string, std::vector<s2t::Action>> traces;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) continue;
    auto outcome = s2t::TraceFromJson(line);
    traces[outcome.id] = std::move(outcome.trace.actions);
  }
  return traces;
}

}  // namespace

int main(int argc, char *argv[]) {
  if (argc != 2 && !(argc == 4 && std::string(argv[2]) == "--listen")) {
    std::cerr << "usage: " << argv[0] << " TRACES.jsonl [--listen PORT]\n";
    return 2;
  }
  try {
    const auto traces = LoadTraces(argv[1]);
    const s2t::AgentFactory factory = [&traces](const s2t::SessionInfo &info) {
      const auto it = traces.find(info.id);
      if (it == traces.end())
        throw s2t::Error(s2t::ErrorCode::kUnknownId, "no recorded trace for '" + info.id + "'");
      return std::make_unique<s2t::ReplayAgent>(it->second);
    };
    if (argc == 2) {
      s2t::FdChannel channel(dup(STDIN_FILENO), dup(STDOUT_FILENO));
      s2t::ServeAgent(channel, factory);
      return 0;
    }
    int port = 0;
    const int fd = s2t::ListenTcp(std::atoi(argv[3]), &port);
    std::cerr << "listening on 127.0.0.1:" << port << "\n";
    while (true) {
      std::shared_ptr<s2t::FdChannel> conn = s2t::AcceptTcp(fd);
      std::thread([conn, &factory] {
        try {
          s2t::ServeAgent(*conn, factory);
        } catch (const std::exception &e) {
          std::cerr << "connection: " << e.what() << "\n";
        }
      }).detach();
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
