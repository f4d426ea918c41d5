// include/s2t/simul.h

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

#ifndef S2T_SIMUL_H_
#define S2T_SIMUL_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "s2t/error.h"
#include "s2t/scorers.h"

namespace s2t {

enum class ActionKind { kRead, kWrite };

struct Action {
  ActionKind kind = ActionKind::kRead;
  std::string token;      // WRITE only; may be empty when is_final
  bool is_final = false;  // WRITE only

  static Action Read() { return {}; }
  static Action Write(std::string token) {
    return {ActionKind::kWrite, std::move(token), false};
  }
  static Action Final() { return {ActionKind::kWrite, {}, true}; }

  bool operator==(const Action &) const = default;
};

/// Short text form: "R", "W:<token>", "F", "WF:<token>".
std::string ActionString(const Action &a);

enum class DelayUnit { kWord, kMs };
std::string_view DelayUnitName(DelayUnit u);
DelayUnit ParseDelayUnit(std::string_view s);

/// Streaming source. For ms sources, end_ms[j] is the time covered once
/// segment j has been read; delays are then recorded in ms.
struct SimulSource {
  std::vector<std::string> segments;
  std::vector<double> end_ms;

  DelayUnit unit() const { return end_ms.empty() ? DelayUnit::kWord : DelayUnit::kMs; }
  /// |x| in delay units.
  double length() const;
  /// Delay value recorded after `read_count` segments have been read.
  double DelayAt(std::size_t read_count) const;
};

SimulSource WordSource(std::string_view text);
/// Fixed-duration chunks over a feature stream of `num_frames` frames.
SimulSource ChunkSource(std::string_view id, std::size_t num_frames,
                        double frame_shift_ms = 10.0, double chunk_ms = 250.0);

struct SessionView {
  std::span<const std::string> source;  // visible prefix
  bool source_done = false;             // every segment has been read
  std::span<const std::string> emitted;
};

struct SessionInfo {
  std::string id;
  DelayUnit unit = DelayUnit::kWord;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void Begin(const SessionInfo &) {}
  virtual Action Step(const SessionView &view) = 0;
  virtual void End() {}
};

using AgentFactory = std::function<std::unique_ptr<Agent>(const SessionInfo &)>;

struct SimulTrace {
  std::vector<Action> actions;
  DelaySequence delays;
  std::vector<std::string> tokens;
  std::string hypothesis;  // tokens joined by single spaces
  bool finished = false;
};

/// Replays `actions` against `source` and returns the delays they imply.
DelaySequence ReconstructDelays(std::span<const Action> actions,
                                const SimulSource &source);

/// Raised when a session stops early; carries whatever was recorded.
class SessionAborted : public Error {
 public:
  SessionAborted(ErrorCode code, const std::string &what, SimulTrace partial)
      : Error(code, what), trace_(std::move(partial)) {}
  const SimulTrace &trace() const { return trace_; }

 private:
  SimulTrace trace_;
};

inline constexpr std::size_t kDefaultMaxActions = 100000;

/// Drives one turn-based session. A READ past the end of the source is not
/// recorded and puts the session in a forced-finish state in which the next
/// action must be a WRITE.
SimulTrace RunSession(Agent &agent, const SimulSource &source,
                      std::size_t max_actions = kDefaultMaxActions,
                      const SessionInfo &info = {});

/// Wait-k: before target token i (0-based) at least k + i segments are read,
/// or the whole source. Without a script the agent echoes source segment i.
class WaitkAgent : public Agent {
 public:
  explicit WaitkAgent(int k);
  WaitkAgent(int k, std::vector<std::string> script);
  Action Step(const SessionView &view) override;

 private:
  std::size_t k_;
  std::optional<std::vector<std::string>> script_;
};

/// Emits a fixed action list in order.
class ReplayAgent : public Agent {
 public:
  explicit ReplayAgent(std::vector<Action> actions) : actions_(std::move(actions)) {}
  Action Step(const SessionView &view) override;

 private:
  std::vector<Action> actions_;
  std::size_t next_ = 0;
};

// ---------------------------------------------------------------------------
// Line protocol

/// Bidirectional LF-delimited byte stream.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// Appends '\n'. PeerClosed if the other side has gone away.
  virtual void WriteLine(std::string_view line) = 0;
  /// Line without terminator; nullopt at end of stream.
  virtual std::optional<std::string> ReadLine() = 0;
};

/// Channel over a pair of file descriptors, closed on destruction.
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, int child_pid = -1);
  ~FdChannel() override;
  FdChannel(const FdChannel &) = delete;
  FdChannel &operator=(const FdChannel &) = delete;

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine() override;

 private:
  int read_fd_;
  int write_fd_;
  int child_pid_;
  std::string buffer_;
  bool eof_ = false;
};

/// Runs `command` through /bin/sh with its stdin/stdout connected.
std::unique_ptr<FdChannel> SpawnAgentProcess(const std::string &command);
std::unique_ptr<FdChannel> ConnectTcp(const std::string &host, int port);
/// Listening socket on 127.0.0.1 (port 0 picks a free one); returns the fd
/// and stores the bound port.
int ListenTcp(int port, int *bound_port);
std::unique_ptr<FdChannel> AcceptTcp(int listen_fd);

std::string EncodeBegin(const SessionInfo &info);
std::string EncodeState(const SessionView &view);
std::string EncodeEnd();
std::string EncodeAction(const Action &a);
/// ProtocolError on anything but a well-formed read/write/final object.
Action DecodeAction(std::string_view line);

/// Harness-side proxy: each Step sends a state line and waits for an action.
class ExternalAgent : public Agent {
 public:
  explicit ExternalAgent(std::unique_ptr<LineChannel> channel)
      : channel_(std::move(channel)) {}
  void Begin(const SessionInfo &info) override;
  Action Step(const SessionView &view) override;
  void End() override;

 private:
  std::unique_ptr<LineChannel> channel_;
};

/// Agent-side loop: answers harness messages with `factory`'s agents until
/// the stream ends. Returns the number of sessions served.
std::size_t ServeAgent(LineChannel &channel, const AgentFactory &factory);

/// "waitk:K", "exec:CMD" or "tcp:HOST:PORT". Exec and tcp agents get a
/// fresh connection per session.
AgentFactory MakeAgentFactory(std::string_view spec);

// ---------------------------------------------------------------------------
// Corpus evaluation

struct SessionOutcome {
  std::string id;
  SimulTrace trace;
  std::string error;  // empty when finished
};

struct SimulOptions {
  std::size_t max_actions = kDefaultMaxActions;
  BleuOptions bleu;
  bool parallel = true;
};

struct CorpusResult {
  std::vector<SessionOutcome> sessions;  // input order
  BleuReport bleu;
  double al = 0.0;   // mean over finished sessions with at least one token
  double dal = 0.0;
  std::size_t latency_count = 0;
  LatencyRegime regime = LatencyRegime::kLow;
  DelayUnit unit = DelayUnit::kWord;
  ScoreReport report;  // bleu, bp, p1..p4, al, dal, regime, unit
};

CorpusResult EvaluateCorpus(const AgentFactory &factory, std::span<const std::string> ids,
                            std::span<const SimulSource> sources,
                            std::span<const std::string> refs,
                            const SimulOptions &opts = {});

/// One JSON object per line, suitable for ReplayAgent input.
std::string TraceToJson(const SessionOutcome &outcome, DelayUnit unit);
SessionOutcome TraceFromJson(std::string_view line);

}  // namespace s2t

#endif  // S2T_SIMUL_H_
