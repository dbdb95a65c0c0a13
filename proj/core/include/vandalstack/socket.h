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

#ifndef VANDALSTACK_SOCKET_H_
#define VANDALSTACK_SOCKET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vandalstack {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  // "host:port"; throws Error(kInvalidArgument).
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

// Owning TCP socket descriptor with a read buffer for line framing.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  static Socket connect(const Endpoint& endpoint);
  // Binds and listens; port 0 picks an ephemeral port.
  static Socket listen(const Endpoint& endpoint);

  Socket accept(int timeout_ms) const;
  std::uint16_t local_port() const;

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }
  void close();
  void shutdown_write();

  void set_nonblocking(bool enabled);

  // Blocking write of all bytes. Throws Error(kConnectionLost).
  void write_all(std::string_view bytes);

  // Next LF-terminated line without the terminator. nullopt on orderly
  // close (a partial last line is returned first). Throws Error(kTimeout)
  // when timeout_ms (>= 0) passes without data.
  std::optional<std::string> read_line(int timeout_ms = -1);

  // Non-blocking helpers used by the poll loop of the server.
  // Appends whatever is readable to the buffer; returns false on EOF.
  bool fill_buffer();
  std::optional<std::string> take_buffered_line();
  // Writes as much of pending as possible, erasing what was sent.
  void flush_some(std::string& pending);

 private:
  int fd_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

}  // namespace vandalstack

#endif  // VANDALSTACK_SOCKET_H_
