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

#include "vandalstack/socket.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "vandalstack/error.h"
#include "vandalstack/number_format.h"

namespace vandalstack {
namespace {

std::string errno_text() { return std::strerror(errno); }

struct AddrInfoList {
  addrinfo* head = nullptr;
  ~AddrInfoList() {
    if (head != nullptr) freeaddrinfo(head);
  }
};

void resolve(const Endpoint& endpoint, bool passive, AddrInfoList& out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const std::string port = std::to_string(endpoint.port);
  const char* host = endpoint.host.empty() ? nullptr : endpoint.host.c_str();
  const int rc = getaddrinfo(host, port.c_str(), &hints, &out.head);
  if (rc != 0) {
    throw Error(ErrorCode::kIo, "cannot resolve " + endpoint.to_string() + ": " + gai_strerror(rc));
  }
}

// Waits for events; returns false on timeout. timeout_ms < 0 waits forever.
bool wait_for(int fd, short events, int timeout_ms) {
  pollfd p{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, timeout_ms);
    if (rc > 0) return true;
    if (rc == 0) return false;
    if (errno != EINTR) throw Error(ErrorCode::kIo, "poll: " + errno_text());
  }
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw Error(ErrorCode::kInvalidArgument, "expected host:port, got '" + std::string(text) + "'");
  }
  Endpoint e;
  e.host = std::string(text.substr(0, colon));
  if (e.host.size() >= 2 && e.host.front() == '[' && e.host.back() == ']') {
    e.host = e.host.substr(1, e.host.size() - 2);
  }
  std::uint64_t port = 0;
  try {
    port = parse_uint64(text.substr(colon + 1));
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidArgument, "bad port in '" + std::string(text) + "'");
  }
  if (port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range: " + std::to_string(port));
  e.port = static_cast<std::uint16_t>(port);
  return e;
}

std::string Endpoint::to_string() const {
  if (host.find(':') != std::string::npos) return "[" + host + "]:" + std::to_string(port);
  return host + ":" + std::to_string(port);
}

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept
    : fd_(other.fd_), buffer_(std::move(other.buffer_)), eof_(other.eof_) {
  other.fd_ = -1;
}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    buffer_ = std::move(other.buffer_);
    eof_ = other.eof_;
    other.fd_ = -1;
  }
  return *this;
}

void Socket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void Socket::shutdown_write() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

Socket Socket::connect(const Endpoint& endpoint) {
  AddrInfoList list;
  resolve(endpoint, false, list);
  std::string last_error = "no addresses";
  for (addrinfo* a = list.head; a != nullptr; a = a->ai_next) {
    Socket s(::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol));
    if (!s.valid()) {
      last_error = errno_text();
      continue;
    }
    if (::connect(s.fd_, a->ai_addr, a->ai_addrlen) == 0) return s;
    last_error = errno_text();
  }
  throw Error(ErrorCode::kConnectionLost,
              "cannot connect to " + endpoint.to_string() + ": " + last_error);
}

Socket Socket::listen(const Endpoint& endpoint) {
  AddrInfoList list;
  resolve(endpoint, true, list);
  std::string last_error = "no addresses";
  for (addrinfo* a = list.head; a != nullptr; a = a->ai_next) {
    Socket s(::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol));
    if (!s.valid()) {
      last_error = errno_text();
      continue;
    }
    const int one = 1;
    ::setsockopt(s.fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(s.fd_, a->ai_addr, a->ai_addrlen) == 0 && ::listen(s.fd_, 16) == 0) return s;
    last_error = errno_text();
  }
  throw Error(ErrorCode::kIo, "cannot listen on " + endpoint.to_string() + ": " + last_error);
}

Socket Socket::accept(int timeout_ms) const {
  if (!wait_for(fd_, POLLIN, timeout_ms)) {
    throw Error(ErrorCode::kTimeout, "no client connected within " + std::to_string(timeout_ms) + " ms");
  }
  for (;;) {
    const int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd >= 0) return Socket(fd);
    if (errno != EINTR) throw Error(ErrorCode::kIo, "accept: " + errno_text());
  }
}

std::uint16_t Socket::local_port() const {
  sockaddr_storage addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    throw Error(ErrorCode::kIo, "getsockname: " + errno_text());
  }
  if (addr.ss_family == AF_INET6) {
    return ntohs(reinterpret_cast<const sockaddr_in6*>(&addr)->sin6_port);
  }
  return ntohs(reinterpret_cast<const sockaddr_in*>(&addr)->sin_port);
}

void Socket::set_nonblocking(bool enabled) {
  const int flags = ::fcntl(fd_, F_GETFL, 0);
  if (flags < 0 || ::fcntl(fd_, F_SETFL, enabled ? flags | O_NONBLOCK : flags & ~O_NONBLOCK) < 0) {
    throw Error(ErrorCode::kIo, "fcntl: " + errno_text());
  }
}

void Socket::write_all(std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd_, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n > 0) {
      bytes.remove_prefix(static_cast<std::size_t>(n));
    } else if (n < 0 && errno == EINTR) {
      continue;
    } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      wait_for(fd_, POLLOUT, -1);
    } else {
      throw Error(ErrorCode::kConnectionLost, "send: " + errno_text());
    }
  }
}

std::optional<std::string> Socket::take_buffered_line() {
  const std::size_t newline = buffer_.find('\n');
  if (newline == std::string::npos) return std::nullopt;
  std::string line = buffer_.substr(0, newline);
  buffer_.erase(0, newline + 1);
  return line;
}

bool Socket::fill_buffer() {
  char chunk[8192];
  for (;;) {
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), MSG_DONTWAIT);
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
    } else if (n == 0) {
      eof_ = true;
      return false;
    } else if (errno == EINTR) {
      continue;
    } else if (errno == EAGAIN || errno == EWOULDBLOCK) {
      return true;
    } else {
      throw Error(ErrorCode::kConnectionLost, "recv: " + errno_text());
    }
  }
}

std::optional<std::string> Socket::read_line(int timeout_ms) {
  for (;;) {
    if (auto line = take_buffered_line()) return line;
    if (eof_) {
      if (buffer_.empty()) return std::nullopt;
      std::string rest = std::move(buffer_);
      buffer_.clear();
      return rest;
    }
    if (!wait_for(fd_, POLLIN, timeout_ms)) {
      throw Error(ErrorCode::kTimeout, "no data within " + std::to_string(timeout_ms) + " ms");
    }
    fill_buffer();
  }
}

void Socket::flush_some(std::string& pending) {
  while (!pending.empty()) {
    const ssize_t n = ::send(fd_, pending.data(), pending.size(), MSG_NOSIGNAL | MSG_DONTWAIT);
    if (n > 0) {
      pending.erase(0, static_cast<std::size_t>(n));
    } else if (n < 0 && errno == EINTR) {
      continue;
    } else if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      return;
    } else {
      throw Error(ErrorCode::kConnectionLost, "send: " + errno_text());
    }
  }
}

}  // namespace vandalstack
