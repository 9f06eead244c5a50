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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fed/util/expected.hpp"

namespace fed::wire {

// The one federation-wide request surface. Every node speaks exactly this
// table; the simulator drives the same codec.
//
//   GET  /catalog              public, canonical catalog bytes
//   GET  /stat/<path>          public, entry metadata JSON
//   GET  /data/<path>          authenticated, optional Range
//   POST /subscribe            redirector only, NodeInfo + revision JSON
//   GET  /locate?path=<path>   redirector only, public
//   GET  /status               operational counters JSON
inline constexpr const char* kAuthHeader = "X-Fed-Token";

enum class Method { get, post };

const char* method_name(Method m);

/// Ordered header list with case-insensitive name lookup.
class Headers {
 public:
  void set(std::string name, std::string value);
  void add(std::string name, std::string value);
  std::optional<std::string_view> get(std::string_view name) const;
  bool contains(std::string_view name) const { return get(name).has_value(); }
  void remove(std::string_view name);

  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }
  bool operator==(const Headers& other) const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

struct Request {
  Method method = Method::get;
  std::string target;  // path plus optional ?query, as transmitted
  Headers headers;
  std::string body;

  std::string_view path() const;         // target before '?', percent-decoded? no: raw
  std::string_view raw_query() const;    // after '?', empty if none
  /// Decoded query parameters in order of appearance.
  std::vector<std::pair<std::string, std::string>> query() const;
  std::optional<std::string_view> header(std::string_view name) const {
    return headers.get(name);
  }

  bool operator==(const Request& other) const;
};

struct Response {
  int status = 200;
  Headers headers;
  std::string body;

  std::optional<std::string_view> header(std::string_view name) const {
    return headers.get(name);
  }
  bool operator==(const Response& other) const;
};

const char* status_reason(int status);

struct ParseError {
  std::size_t offset = 0;  // byte offset where parsing failed
  std::string message;
};

enum class DecodeStatus { ok, incomplete, error };

template <typename T>
struct DecodeResult {
  DecodeStatus status = DecodeStatus::incomplete;
  std::size_t consumed = 0;  // valid when status == ok
  std::optional<T> value;
  ParseError error;
};

std::string encode_request(const Request& request);
std::string encode_response(const Response& response);

/// Status line + headers + blank line for a response whose body (of
/// `content_length` bytes) will be written separately.
std::string encode_response_head(int status, const Headers& headers,
                                 std::uint64_t content_length);

/// Incremental decoders: `incomplete` means more bytes may complete the
/// message; `error` is a framing violation at `error.offset`.
DecodeResult<Request> decode_request(std::string_view bytes);
DecodeResult<Response> decode_response(std::string_view bytes);

/// Response head only (through the blank line); body length is reported but
/// its bytes are not consumed. For streaming readers.
struct ResponseHead {
  int status = 200;
  Headers headers;
  std::uint64_t content_length = 0;
};
DecodeResult<ResponseHead> decode_response_head(std::string_view bytes);

/// Strict variants for complete messages: `incomplete` becomes a truncation
/// error whose offset points at the end of the usable input.
Expected<Request, ParseError> decode_request_complete(std::string_view bytes);
Expected<Response, ParseError> decode_response_complete(std::string_view bytes);

/// Inclusive byte range per `Range: bytes=a-b` (b omitted = to end of file).
struct ByteRange {
  std::uint64_t first = 0;
  std::optional<std::uint64_t> last;
};

std::optional<ByteRange> parse_range_header(std::string_view value);
std::string format_range_header(const ByteRange& range);
std::string format_content_range(std::uint64_t first, std::uint64_t last,
                                 std::uint64_t total);

std::string percent_decode(std::string_view s);

/// Response builders that keep wire invariants (Content-Length iff body
/// non-empty, Content-Range on 206).
Response make_response(int status, std::string body = "",
                       std::string content_type = "");
Response make_json_response(int status, std::string body);
Response make_error_response(int status, std::string_view detail);

}  // namespace fed::wire
