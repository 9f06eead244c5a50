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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "fed/util/expected.hpp"

namespace fed::net {

/// "host:port" -> (host, port). Port must parse as uint16.
std::optional<std::pair<std::string, std::uint16_t>> split_endpoint(
    std::string_view endpoint);

/// Owned, connected TCP socket.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd) : fd_(fd) {}
  ~TcpStream();
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;
  TcpStream(TcpStream&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  TcpStream& operator=(TcpStream&& other) noexcept;

  static Expected<TcpStream, std::string> connect(const std::string& endpoint,
                                                  double timeout_seconds = 10.0);

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

  void set_io_timeout(double seconds);

  /// Bytes read, 0 on orderly close, negative on error/timeout.
  long read_some(char* buf, std::size_t len);
  bool write_all(std::string_view bytes);

  /// Half-duplex teardown; unblocks any reader/writer on this socket.
  void shutdown_both();
  void close();

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  TcpListener() = default;
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;

  /// Binds and listens; port 0 picks an ephemeral port.
  static Expected<TcpListener, std::string> bind(const std::string& endpoint);

  /// Actual "host:port" after binding.
  const std::string& endpoint() const { return endpoint_; }

  /// Blocks; empty optional when the listener was closed.
  std::optional<TcpStream> accept();

  void close();
  bool valid() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
  std::string endpoint_;
};

}  // namespace fed::net
