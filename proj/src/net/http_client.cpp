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

#include "fed/net/http_client.hpp"

#include <algorithm>
#include <cstring>

namespace fed::net {

using wire::DecodeStatus;

const char* transport_error_kind_name(TransportError::Kind kind) {
  switch (kind) {
    case TransportError::Kind::connect_failed: return "connect_failed";
    case TransportError::Kind::send_failed: return "send_failed";
    case TransportError::Kind::recv_failed: return "recv_failed";
    case TransportError::Kind::parse_failed: return "parse_failed";
    case TransportError::Kind::short_read: return "short_read";
  }
  return "?";
}

Expected<HttpConnection, TransportError> HttpConnection::open(
    const std::string& endpoint, double timeout_seconds) {
  auto stream = TcpStream::connect(endpoint, timeout_seconds);
  if (!stream) {
    return TransportError{TransportError::Kind::connect_failed, stream.error()};
  }
  return HttpConnection(std::move(stream.value()), endpoint);
}

Expected<wire::ResponseHead, TransportError> HttpConnection::send(
    const wire::Request& request) {
  if (body_remaining_ > 0) {
    return TransportError{TransportError::Kind::send_failed,
                          "previous response body not drained"};
  }
  if (!stream_.write_all(wire::encode_request(request))) {
    return TransportError{TransportError::Kind::send_failed,
                          "send to " + endpoint_ + " failed"};
  }
  char tmp[64 * 1024];
  while (true) {
    auto head = wire::decode_response_head(buffer_);
    if (head.status == DecodeStatus::error) {
      return TransportError{TransportError::Kind::parse_failed, head.error.message};
    }
    if (head.status == DecodeStatus::ok) {
      buffer_.erase(0, head.consumed);
      body_remaining_ = head.value->content_length;
      return std::move(*head.value);
    }
    long n = stream_.read_some(tmp, sizeof tmp);
    if (n < 0) {
      return TransportError{TransportError::Kind::recv_failed,
                            "recv from " + endpoint_ + " failed"};
    }
    if (n == 0) {
      return TransportError{TransportError::Kind::recv_failed,
                            "connection closed before response head"};
    }
    buffer_.append(tmp, static_cast<std::size_t>(n));
  }
}

Expected<std::size_t, TransportError> HttpConnection::read_body(char* buf,
                                                                std::size_t len) {
  if (body_remaining_ == 0) return std::size_t{0};
  len = static_cast<std::size_t>(
      std::min<std::uint64_t>(len, body_remaining_));

  if (!buffer_.empty()) {
    std::size_t take = std::min(buffer_.size(), len);
    std::memcpy(buf, buffer_.data(), take);
    buffer_.erase(0, take);
    body_remaining_ -= take;
    return take;
  }
  long n = stream_.read_some(buf, len);
  if (n < 0) {
    return TransportError{TransportError::Kind::recv_failed,
                          "recv from " + endpoint_ + " failed"};
  }
  if (n == 0) {
    return TransportError{
        TransportError::Kind::short_read,
        "short read: " + std::to_string(body_remaining_) + " bytes missing"};
  }
  body_remaining_ -= static_cast<std::uint64_t>(n);
  return static_cast<std::size_t>(n);
}

Expected<wire::Response, TransportError> HttpConnection::roundtrip(
    const wire::Request& request) {
  auto head = send(request);
  if (!head) return head.error();

  wire::Response response;
  response.status = head->status;
  response.headers = std::move(head->headers);
  response.body.reserve(head->content_length);
  char tmp[64 * 1024];
  while (body_remaining_ > 0) {
    auto n = read_body(tmp, sizeof tmp);
    if (!n) return n.error();
    response.body.append(tmp, *n);
  }
  return response;
}

}  // namespace fed::net
