/*
 * Copyright 2026 The vandalstack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VANDALSTACK_SERVE_H_
#define VANDALSTACK_SERVE_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "vandalstack/corpus.h"
#include "vandalstack/evaluation.h"
#include "vandalstack/socket.h"
#include "vandalstack/stacking.h"

namespace vandalstack {

// Line protocol over one TCP connection:
//   server -> client   REV<TAB><corpus line>
//   client -> server   SCORE<TAB><rev_id><TAB><score>
//   server -> client   END             after every revision is answered
//   server -> client   ERROR<TAB><msg> on a protocol violation, then close
// Answers may arrive in any order; at most window revisions are unanswered.

struct SessionState {
  std::size_t window = 16;
  std::size_t in_flight = 0;
  std::size_t sent = 0;
  std::size_t answered = 0;
};

struct TraceEvent {
  enum class Kind { kSent, kAnswered };
  Kind kind;
  RevisionId rev_id;
  std::size_t in_flight;  // after the event
};

struct ServerOptions {
  std::size_t window = 16;
  int timeout_ms = 30000;
};

struct ServerResult {
  // Scores in corpus order; label is false for revisions without truth.
  std::vector<ScoredExample> scores;
  // "rev_id TAB score" exactly as received, in corpus order.
  std::vector<std::string> score_lines;
  EvalReport report;  // over the labeled revisions
  std::vector<TraceEvent> trace;
  std::size_t max_in_flight = 0;
};

class ScoringServer {
 public:
  explicit ScoringServer(const Endpoint& listen_at);

  std::uint16_t port() const { return listener_.local_port(); }

  // Serves one client session over the whole corpus. A protocol violation
  // sends an ERROR line, closes the session and throws
  // Error(kProtocolViolation); silence beyond timeout_ms throws kTimeout.
  ServerResult run_session(const std::vector<Revision>& corpus,
                           const LabelMap& truth, const ServerOptions& options);

 private:
  Socket listener_;
};

ServerResult run_server(const std::vector<Revision>& corpus, const LabelMap& truth,
                        const Endpoint& listen_at, const ServerOptions& options);

void write_score_lines(std::ostream& out, const std::vector<std::string>& lines);

struct ClientStats {
  std::size_t received = 0;
  std::size_t answered = 0;
  bool finished = false;  // END seen
  std::string error;      // ERROR payload or failure description
};

// Answers every REV line with score_revision(). Returns 0 after END, 1
// when the server reports an error, the connection drops early, or a
// server line is malformed.
int run_client(const StackedPipeline& pipeline, const Endpoint& server,
               ClientStats* stats = nullptr);

}  // namespace vandalstack

#endif  // VANDALSTACK_SERVE_H_
