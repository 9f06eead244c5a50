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

#include <cstdint>
#include <string>

#include "fed/net/tcp.hpp"
#include "fed/wire/http.hpp"

namespace fed::net {

struct TransportError {
  enum class Kind {
    connect_failed,
    send_failed,
    recv_failed,
    parse_failed,
    short_read,  // peer closed before Content-Length was satisfied
  };
  Kind kind = Kind::connect_failed;
  std::string message;
};

const char* transport_error_kind_name(TransportError::Kind kind);

/// One client connection. Requests are sequential (keep-alive reuse is the
/// caller's choice); a streaming body must be drained before the next send.
class HttpConnection {
 public:
  static Expected<HttpConnection, TransportError> open(const std::string& endpoint,
                                                       double timeout_seconds = 30.0);

  /// Sends a request and reads the complete response.
  Expected<wire::Response, TransportError> roundtrip(const wire::Request& request);

  /// Sends a request and reads only the response head.
  Expected<wire::ResponseHead, TransportError> send(const wire::Request& request);

  /// Reads up to `len` body bytes; 0 means the body is complete. A peer
  /// close before Content-Length is satisfied is a short_read error.
  Expected<std::size_t, TransportError> read_body(char* buf, std::size_t len);

  std::uint64_t body_remaining() const { return body_remaining_; }
  const std::string& endpoint() const { return endpoint_; }

 private:
  HttpConnection(TcpStream stream, std::string endpoint)
      : stream_(std::move(stream)), endpoint_(std::move(endpoint)) {}

  TcpStream stream_;
  std::string endpoint_;
  std::string buffer_;
  std::uint64_t body_remaining_ = 0;
};

}  // namespace fed::net
