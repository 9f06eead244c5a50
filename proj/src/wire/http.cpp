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

#include "fed/wire/http.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace fed::wire {

namespace {

constexpr std::size_t kMaxHeaderBlock = 64 * 1024;
constexpr std::uint64_t kMaxBody = 2ull * 1024 * 1024 * 1024;

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool is_token_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::string_view("!#$%&'*+-.^_`|~").find(c) != std::string_view::npos;
}

std::string_view trim_ows(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <typename T>
DecodeResult<T> decode_error(std::size_t offset, std::string message) {
  DecodeResult<T> r;
  r.status = DecodeStatus::error;
  r.error = ParseError{offset, std::move(message)};
  return r;
}

template <typename T>
DecodeResult<T> decode_incomplete() {
  DecodeResult<T> r;
  r.status = DecodeStatus::incomplete;
  return r;
}

// Parses the header block starting at `pos` (first header line). On success
// leaves `pos` just past the blank line.
template <typename T>
std::optional<DecodeResult<T>> parse_headers(std::string_view bytes, std::size_t& pos,
                                             Headers& headers) {
  while (true) {
    std::size_t line_end = bytes.find("\r\n", pos);
    if (line_end == std::string_view::npos) {
      if (bytes.size() - pos > kMaxHeaderBlock) {
        return decode_error<T>(pos, "header block exceeds limit");
      }
      return decode_incomplete<T>();
    }
    if (line_end == pos) {  // blank line: end of headers
      pos += 2;
      return std::nullopt;
    }
    std::string_view line = bytes.substr(pos, line_end - pos);
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      return decode_error<T>(pos, "header line missing ':'");
    }
    if (colon == 0) return decode_error<T>(pos, "empty header name");
    std::string_view name = line.substr(0, colon);
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (!is_token_char(name[i])) {
        return decode_error<T>(pos + i, "invalid character in header name");
      }
    }
    std::string_view value = trim_ows(line.substr(colon + 1));
    headers.add(std::string(name), std::string(value));
    pos = line_end + 2;
  }
}

// Returns the body length or an error, enforcing the length limits.
template <typename T>
Expected<std::uint64_t, DecodeResult<T>> body_length(const Headers& headers,
                                                     std::size_t header_end) {
  auto cl = headers.get("Content-Length");
  if (!cl.has_value()) return std::uint64_t{0};
  auto n = parse_u64(*cl);
  if (!n.has_value()) {
    return decode_error<T>(header_end, "malformed Content-Length");
  }
  if (*n > kMaxBody) return decode_error<T>(header_end, "body exceeds limit");
  return *n;
}

void append_headers(std::string& out, const Headers& headers) {
  for (const auto& [name, value] : headers.items()) {
    out += name;
    out += ": ";
    out += value;
    out += "\r\n";
  }
}

}  // namespace

const char* method_name(Method m) { return m == Method::get ? "GET" : "POST"; }

void Headers::set(std::string name, std::string value) {
  remove(name);
  items_.emplace_back(std::move(name), std::move(value));
}

void Headers::add(std::string name, std::string value) {
  items_.emplace_back(std::move(name), std::move(value));
}

std::optional<std::string_view> Headers::get(std::string_view name) const {
  for (const auto& [n, v] : items_) {
    if (iequals(n, name)) return std::string_view(v);
  }
  return std::nullopt;
}

void Headers::remove(std::string_view name) {
  items_.erase(std::remove_if(items_.begin(), items_.end(),
                              [&](const auto& item) { return iequals(item.first, name); }),
               items_.end());
}

bool Headers::operator==(const Headers& other) const {
  if (items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!iequals(items_[i].first, other.items_[i].first) ||
        items_[i].second != other.items_[i].second) {
      return false;
    }
  }
  return true;
}

std::string_view Request::path() const {
  std::string_view t = target;
  std::size_t q = t.find('?');
  return q == std::string_view::npos ? t : t.substr(0, q);
}

std::string_view Request::raw_query() const {
  std::string_view t = target;
  std::size_t q = t.find('?');
  return q == std::string_view::npos ? std::string_view{} : t.substr(q + 1);
}

std::vector<std::pair<std::string, std::string>> Request::query() const {
  std::vector<std::pair<std::string, std::string>> out;
  std::string_view q = raw_query();
  while (!q.empty()) {
    std::size_t amp = q.find('&');
    std::string_view item = q.substr(0, amp);
    q = amp == std::string_view::npos ? std::string_view{} : q.substr(amp + 1);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.emplace_back(percent_decode(item), "");
    } else {
      out.emplace_back(percent_decode(item.substr(0, eq)),
                       percent_decode(item.substr(eq + 1)));
    }
  }
  return out;
}

bool Request::operator==(const Request& other) const {
  return method == other.method && target == other.target &&
         headers == other.headers && body == other.body;
}

bool Response::operator==(const Response& other) const {
  return status == other.status && headers == other.headers && body == other.body;
}

const char* status_reason(int status) {
  switch (status) {
    case 200: return "OK";
    case 206: return "Partial Content";
    case 400: return "Bad Request";
    case 401: return "Unauthorized";
    case 403: return "Forbidden";
    case 404: return "Not Found";
    case 429: return "Too Many Requests";
    case 500: return "Internal Server Error";
    case 502: return "Bad Gateway";
    case 503: return "Service Unavailable";
    default: return "Status";
  }
}

std::string encode_request(const Request& request) {
  std::string out;
  out += method_name(request.method);
  out += ' ';
  out += request.target;
  out += " HTTP/1.1\r\n";
  Headers headers = request.headers;
  headers.remove("Content-Length");
  if (!request.body.empty()) {
    headers.set("Content-Length", std::to_string(request.body.size()));
  }
  append_headers(out, headers);
  out += "\r\n";
  out += request.body;
  return out;
}

std::string encode_response_head(int status, const Headers& headers,
                                 std::uint64_t content_length) {
  std::string out = "HTTP/1.1 ";
  out += std::to_string(status);
  out += ' ';
  out += status_reason(status);
  out += "\r\n";
  Headers copy = headers;
  copy.remove("Content-Length");
  if (content_length > 0) {
    copy.set("Content-Length", std::to_string(content_length));
  }
  append_headers(out, copy);
  out += "\r\n";
  return out;
}

std::string encode_response(const Response& response) {
  return encode_response_head(response.status, response.headers,
                              response.body.size()) +
         response.body;
}

DecodeResult<Request> decode_request(std::string_view bytes) {
  std::size_t line_end = bytes.find("\r\n");
  if (line_end == std::string_view::npos) {
    if (bytes.size() > kMaxHeaderBlock) {
      return decode_error<Request>(0, "request line exceeds limit");
    }
    return decode_incomplete<Request>();
  }
  std::string_view line = bytes.substr(0, line_end);
  std::size_t sp1 = line.find(' ');
  if (sp1 == std::string_view::npos) {
    return decode_error<Request>(line.size(), "request line missing target");
  }
  std::string_view method_str = line.substr(0, sp1);
  Request request;
  if (method_str == "GET") {
    request.method = Method::get;
  } else if (method_str == "POST") {
    request.method = Method::post;
  } else {
    return decode_error<Request>(0, "unsupported method");
  }
  std::size_t sp2 = line.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos) {
    return decode_error<Request>(line.size(), "request line missing version");
  }
  std::string_view target = line.substr(sp1 + 1, sp2 - sp1 - 1);
  if (target.empty() || target[0] != '/') {
    return decode_error<Request>(sp1 + 1, "target must begin with '/'");
  }
  std::string_view version = line.substr(sp2 + 1);
  if (version != "HTTP/1.1") {
    return decode_error<Request>(sp2 + 1, "unsupported protocol version");
  }
  request.target = std::string(target);

  std::size_t pos = line_end + 2;
  if (auto err = parse_headers<Request>(bytes, pos, request.headers)) return *err;

  auto length = body_length<Request>(request.headers, pos);
  if (!length) return length.error();
  if (bytes.size() - pos < *length) return decode_incomplete<Request>();
  request.body = std::string(bytes.substr(pos, *length));
  // Content-Length is framing, owned by the codec; encode re-derives it.
  request.headers.remove("Content-Length");

  DecodeResult<Request> result;
  result.status = DecodeStatus::ok;
  result.consumed = pos + *length;
  result.value = std::move(request);
  return result;
}

DecodeResult<ResponseHead> decode_response_head(std::string_view bytes) {
  std::size_t line_end = bytes.find("\r\n");
  if (line_end == std::string_view::npos) {
    if (bytes.size() > kMaxHeaderBlock) {
      return decode_error<ResponseHead>(0, "status line exceeds limit");
    }
    return decode_incomplete<ResponseHead>();
  }
  std::string_view line = bytes.substr(0, line_end);
  if (!line.starts_with("HTTP/1.1 ")) {
    return decode_error<ResponseHead>(0, "unsupported protocol version");
  }
  std::string_view rest = line.substr(9);
  if (rest.size() < 3 || (rest.size() > 3 && rest[3] != ' ')) {
    return decode_error<ResponseHead>(9, "malformed status code");
  }
  auto code = parse_u64(rest.substr(0, 3));
  if (!code.has_value() || *code < 100 || *code > 599) {
    return decode_error<ResponseHead>(9, "malformed status code");
  }
  ResponseHead head;
  head.status = static_cast<int>(*code);

  std::size_t pos = line_end + 2;
  if (auto err = parse_headers<ResponseHead>(bytes, pos, head.headers)) return *err;

  if (head.status == 206 && !head.headers.contains("Content-Range")) {
    return decode_error<ResponseHead>(pos, "206 response missing Content-Range");
  }

  auto length = body_length<ResponseHead>(head.headers, pos);
  if (!length) return length.error();
  head.content_length = *length;
  head.headers.remove("Content-Length");

  DecodeResult<ResponseHead> result;
  result.status = DecodeStatus::ok;
  result.consumed = pos;
  result.value = std::move(head);
  return result;
}

DecodeResult<Response> decode_response(std::string_view bytes) {
  auto head = decode_response_head(bytes);
  if (head.status != DecodeStatus::ok) {
    DecodeResult<Response> out;
    out.status = head.status;
    out.error = head.error;
    return out;
  }
  std::size_t pos = head.consumed;
  std::uint64_t length = head.value->content_length;
  if (bytes.size() - pos < length) return decode_incomplete<Response>();

  Response response;
  response.status = head.value->status;
  response.headers = std::move(head.value->headers);
  response.body = std::string(bytes.substr(pos, length));

  DecodeResult<Response> result;
  result.status = DecodeStatus::ok;
  result.consumed = pos + length;
  result.value = std::move(response);
  return result;
}

Expected<Request, ParseError> decode_request_complete(std::string_view bytes) {
  auto r = decode_request(bytes);
  if (r.status == DecodeStatus::ok) return std::move(*r.value);
  if (r.status == DecodeStatus::incomplete) {
    return ParseError{bytes.size(), "truncated message"};
  }
  return r.error;
}

Expected<Response, ParseError> decode_response_complete(std::string_view bytes) {
  auto r = decode_response(bytes);
  if (r.status == DecodeStatus::ok) return std::move(*r.value);
  if (r.status == DecodeStatus::incomplete) {
    return ParseError{bytes.size(), "truncated message"};
  }
  return r.error;
}

std::optional<ByteRange> parse_range_header(std::string_view value) {
  value = trim_ows(value);
  if (!value.starts_with("bytes=")) return std::nullopt;
  value.remove_prefix(6);
  std::size_t dash = value.find('-');
  if (dash == std::string_view::npos || dash == 0) return std::nullopt;  // no suffix form
  auto first = parse_u64(value.substr(0, dash));
  if (!first.has_value()) return std::nullopt;
  ByteRange range;
  range.first = *first;
  std::string_view last_str = value.substr(dash + 1);
  if (!last_str.empty()) {
    auto last = parse_u64(last_str);
    if (!last.has_value() || *last < range.first) return std::nullopt;
    range.last = *last;
  }
  return range;
}

std::string format_range_header(const ByteRange& range) {
  std::string out = "bytes=" + std::to_string(range.first) + "-";
  if (range.last.has_value()) out += std::to_string(*range.last);
  return out;
}

std::string format_content_range(std::uint64_t first, std::uint64_t last,
                                 std::uint64_t total) {
  return "bytes " + std::to_string(first) + "-" + std::to_string(last) + "/" +
         std::to_string(total);
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        return std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
      };
      out.push_back(static_cast<char>((nibble(s[i + 1]) << 4) | nibble(s[i + 2])));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

Response make_response(int status, std::string body, std::string content_type) {
  Response response;
  response.status = status;
  if (!content_type.empty()) response.headers.set("Content-Type", std::move(content_type));
  response.body = std::move(body);
  return response;
}

Response make_json_response(int status, std::string body) {
  return make_response(status, std::move(body), "application/json");
}

Response make_error_response(int status, std::string_view detail) {
  std::string body = "{\"error\":";
  body += std::to_string(status);
  body += ",\"detail\":\"";
  for (char c : detail) {
    if (c == '"' || c == '\\') body.push_back('\\');
    if (static_cast<unsigned char>(c) >= 0x20) body.push_back(c);
  }
  body += "\"}";
  return make_json_response(status, std::move(body));
}

}  // namespace fed::wire
