// Copyright 2026 The Fedcache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fed/net/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>

namespace fed::net {

namespace {

void set_timeout_opt(int fd, int option, double seconds) {
  timeval tv;
  tv.tv_sec = static_cast<time_t>(seconds);
  tv.tv_usec = static_cast<suseconds_t>((seconds - std::floor(seconds)) * 1e6);
  setsockopt(fd, SOL_SOCKET, option, &tv, sizeof tv);
}

std::string endpoint_of(const sockaddr_in& addr) {
  char buf[INET_ADDRSTRLEN] = {0};
  inet_ntop(AF_INET, &addr.sin_addr, buf, sizeof buf);
  return std::string(buf) + ":" + std::to_string(ntohs(addr.sin_port));
}

}  // namespace

std::optional<std::pair<std::string, std::uint16_t>> split_endpoint(
    std::string_view endpoint) {
  std::size_t colon = endpoint.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string_view port_str = endpoint.substr(colon + 1);
  unsigned int port = 0;
  auto [ptr, ec] = std::from_chars(port_str.data(), port_str.data() + port_str.size(), port);
  if (ec != std::errc() || ptr != port_str.data() + port_str.size() || port > 65535) {
    return std::nullopt;
  }
  return std::make_pair(std::string(endpoint.substr(0, colon)),
                        static_cast<std::uint16_t>(port));
}

TcpStream::~TcpStream() { close(); }

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

Expected<TcpStream, std::string> TcpStream::connect(const std::string& endpoint,
                                                    double timeout_seconds) {
  auto parts = split_endpoint(endpoint);
  if (!parts) return "invalid endpoint '" + endpoint + "'";

  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* results = nullptr;
  std::string port_str = std::to_string(parts->second);
  int rc = getaddrinfo(parts->first.c_str(), port_str.c_str(), &hints, &results);
  if (rc != 0) return "resolve " + endpoint + ": " + gai_strerror(rc);

  int fd = -1;
  std::string last_error = "no addresses";
  for (addrinfo* ai = results; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    set_timeout_opt(fd, SO_SNDTIMEO, timeout_seconds);
    set_timeout_opt(fd, SO_RCVTIMEO, timeout_seconds);
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    last_error = std::strerror(errno);
    ::close(fd);
    fd = -1;
  }
  freeaddrinfo(results);
  if (fd < 0) return "connect " + endpoint + ": " + last_error;

  int one = 1;
  setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return TcpStream(fd);
}

void TcpStream::set_io_timeout(double seconds) {
  if (fd_ < 0) return;
  set_timeout_opt(fd_, SO_RCVTIMEO, seconds);
  set_timeout_opt(fd_, SO_SNDTIMEO, seconds);
}

long TcpStream::read_some(char* buf, std::size_t len) {
  while (true) {
    ssize_t n = ::recv(fd_, buf, len, 0);
    if (n >= 0) return n;
    if (errno == EINTR) continue;
    return -1;
  }
}

bool TcpStream::write_all(std::string_view bytes) {
  const char* data = bytes.data();
  std::size_t remaining = bytes.size();
  while (remaining > 0) {
    ssize_t n = ::send(fd_, data, remaining, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += n;
    remaining -= static_cast<std::size_t>(n);
  }
  return true;
}

void TcpStream::shutdown_both() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpListener::~TcpListener() { close(); }

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(other.fd_), endpoint_(std::move(other.endpoint_)) {
  other.fd_ = -1;
}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    endpoint_ = std::move(other.endpoint_);
    other.fd_ = -1;
  }
  return *this;
}

Expected<TcpListener, std::string> TcpListener::bind(const std::string& endpoint) {
  auto parts = split_endpoint(endpoint);
  if (!parts) return "invalid listen endpoint '" + endpoint + "'";

  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return std::string("socket: ") + std::strerror(errno);
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(parts->second);
  if (inet_pton(AF_INET, parts->first.c_str(), &addr.sin_addr) != 1) {
    if (parts->first == "localhost") {
      inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    } else {
      ::close(fd);
      return "invalid listen address '" + parts->first + "'";
    }
  }
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    std::string err = std::strerror(errno);
    ::close(fd);
    return "bind " + endpoint + ": " + err;
  }
  if (::listen(fd, 128) != 0) {
    std::string err = std::strerror(errno);
    ::close(fd);
    return "listen " + endpoint + ": " + err;
  }
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);

  TcpListener listener;
  listener.fd_ = fd;
  listener.endpoint_ = endpoint_of(bound);
  return listener;
}

std::optional<TcpStream> TcpListener::accept() {
  while (true) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      int one = 1;
      setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return TcpStream(fd);
    }
    if (errno == EINTR) continue;
    return std::nullopt;  // listener closed or fatal
  }
}

void TcpListener::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

}  // namespace fed::net
