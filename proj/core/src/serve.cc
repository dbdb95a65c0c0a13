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

#include "vandalstack/serve.h"

#include <poll.h>

#include <cmath>
#include <string>
#include <unordered_map>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack {
namespace {

struct Answer {
  RevisionId rev_id;
  double score;
  std::string line;  // "rev_id TAB score" as received
};

// Parses "SCORE TAB rev_id TAB score"; nullopt when malformed.
std::optional<Answer> parse_answer(const std::string& line) {
  constexpr std::string_view kPrefix = "SCORE\t";
  if (!std::string_view(line).starts_with(kPrefix)) return std::nullopt;
  const std::string body = line.substr(kPrefix.size());
  const std::size_t tab = body.find('\t');
  if (tab == std::string::npos || body.find('\t', tab + 1) != std::string::npos) return std::nullopt;
  try {
    Answer a{parse_uint64(std::string_view(body).substr(0, tab)),
             parse_double(std::string_view(body).substr(tab + 1)), body};
    if (!std::isfinite(a.score) || a.score < 0.0 || a.score > 1.0) return std::nullopt;
    return a;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

ScoringServer::ScoringServer(const Endpoint& listen_at) : listener_(Socket::listen(listen_at)) {}

ServerResult ScoringServer::run_session(const std::vector<Revision>& corpus,
                                        const LabelMap& truth, const ServerOptions& options) {
  if (options.window == 0) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
  std::unordered_map<RevisionId, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!position.emplace(corpus[i].rev_id, i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate rev_id " + std::to_string(corpus[i].rev_id) + " in served corpus");
    }
  }

  Socket client = listener_.accept(options.timeout_ms);
  client.set_nonblocking(true);

  ServerResult result;
  SessionState state;
  state.window = options.window;
  std::vector<std::optional<Answer>> answers(corpus.size());
  std::string pending;

  auto violate = [&](const std::string& why) {
    try {
      client.set_nonblocking(false);
      client.write_all("ERROR\t" + why + "\n");
      client.shutdown_write();
    } catch (const Error&) {
    }
    client.close();
    throw Error(ErrorCode::kProtocolViolation, why);
  };

  while (state.answered < corpus.size()) {
    while (state.in_flight < state.window && state.sent < corpus.size()) {
      const Revision& r = corpus[state.sent];
      pending += "REV\t" + serialize_line(r) + "\n";
      ++state.sent;
      ++state.in_flight;
      result.trace.push_back({TraceEvent::Kind::kSent, r.rev_id, state.in_flight});
      result.max_in_flight = std::max(result.max_in_flight, state.in_flight);
    }
    client.flush_some(pending);

    pollfd p{client.fd(), static_cast<short>(POLLIN | (pending.empty() ? 0 : POLLOUT)), 0};
    int rc = 0;
    do {
      rc = ::poll(&p, 1, options.timeout_ms);
    } while (rc < 0 && errno == EINTR);
    if (rc < 0) throw Error(ErrorCode::kIo, "poll failed");
    if (rc == 0) {
      try {
        client.set_nonblocking(false);
        client.write_all("ERROR\ttimeout\n");
      } catch (const Error&) {
      }
      throw Error(ErrorCode::kTimeout, "client silent for " + std::to_string(options.timeout_ms) +
                                           " ms after " + std::to_string(state.answered) +
                                           " answers");
    }
    if ((p.revents & (POLLIN | POLLHUP | POLLERR)) == 0) continue;

    const bool open = client.fill_buffer();
    while (auto line = client.take_buffered_line()) {
      auto answer = parse_answer(*line);
      if (!answer) violate("malformed answer '" + *line + "'");
      const auto it = position.find(answer->rev_id);
      if (it == position.end() || it->second >= state.sent) {
        violate("unknown rev_id " + std::to_string(answer->rev_id));
      }
      if (answers[it->second]) violate("duplicate answer for rev_id " + std::to_string(answer->rev_id));
      answers[it->second] = std::move(*answer);
      --state.in_flight;
      ++state.answered;
      result.trace.push_back({TraceEvent::Kind::kAnswered, corpus[it->second].rev_id,
                              state.in_flight});
    }
    if (!open && state.answered < corpus.size()) {
      throw Error(ErrorCode::kConnectionLost,
                  "client disconnected after " + std::to_string(state.answered) + " of " +
                      std::to_string(corpus.size()) + " answers");
    }
  }

  client.set_nonblocking(false);
  client.write_all(pending + "END\n");
  client.shutdown_write();

  std::vector<ScoredExample> labeled;
  result.scores.reserve(corpus.size());
  result.score_lines.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto t = truth.find(corpus[i].rev_id);
    ScoredExample s{corpus[i].rev_id, answers[i]->score, t != truth.end() && t->second};
    result.scores.push_back(s);
    result.score_lines.push_back(std::move(answers[i]->line));
    if (t != truth.end()) labeled.push_back(s);
  }
  result.report = evaluate(labeled);
  return result;
}

ServerResult run_server(const std::vector<Revision>& corpus, const LabelMap& truth,
                        const Endpoint& listen_at, const ServerOptions& options) {
  ScoringServer server(listen_at);
  return server.run_session(corpus, truth, options);
}

void write_score_lines(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << line << '\n';
}

int run_client(const StackedPipeline& pipeline, const Endpoint& server, ClientStats* stats) {
  ClientStats local;
  ClientStats& s = stats != nullptr ? *stats : local;
  try {
    Socket socket = Socket::connect(server);
    for (;;) {
      auto line = socket.read_line();
      if (!line) {
        s.error = "server closed the connection after " + std::to_string(s.received) +
                  " revisions";
        return 1;
      }
      if (*line == "END") {
        s.finished = true;
        return 0;
      }
      if (line->starts_with("ERROR\t")) {
        s.error = line->substr(6);
        return 1;
      }
      if (!line->starts_with("REV\t")) {
        s.error = "malformed server line '" + *line + "'";
        return 1;
      }
      ++s.received;
      Revision revision;
      try {
        revision = parse_line(std::string_view(*line).substr(4));
      } catch (const Error& e) {
        s.error = std::string("malformed revision from server: ") + e.what();
        return 1;
      }
      const double score = score_revision(pipeline, revision);
      socket.write_all("SCORE\t" + std::to_string(revision.rev_id) + "\t" + format_score(score) +
                       "\n");
      ++s.answered;
    }
  } catch (const Error& e) {
    s.error = e.what();
    return 1;
  }
}

}  // namespace vandalstack
