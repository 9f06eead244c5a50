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

#include <doctest.h>

#include <random>

#include "fed/wire/http.hpp"

using namespace fed::wire;

TEST_CASE("simple GET round-trips") {
  Request r;
  r.method = Method::get;
  r.target = "/catalog";
  auto decoded = decode_request_complete(encode_request(r));
  REQUIRE(decoded.ok());
  CHECK(decoded.value() == r);
}

TEST_CASE("range request with auth token round-trips") {
  Request r;
  r.method = Method::get;
  r.target = "/data/frames/f1.gwf";
  r.headers.set("Range", "bytes=0-33554431");
  r.headers.set("X-Fed-Token", "t1");
  auto decoded = decode_request_complete(encode_request(r));
  REQUIRE(decoded.ok());
  CHECK(decoded.value() == r);
  CHECK(decoded.value().header("range").has_value());  // case-insensitive
  CHECK(*decoded.value().header("RANGE") == "bytes=0-33554431");
}

TEST_CASE("truncated body is a parse error with offset") {
  std::string bytes = "POST /subscribe HTTP/1.1\r\nContent-Length: 5\r\n\r\nfour";
  auto incremental = decode_request(bytes);
  CHECK(incremental.status == DecodeStatus::incomplete);
  auto strict = decode_request_complete(bytes);
  REQUIRE_FALSE(strict.ok());
  CHECK(strict.error().offset == bytes.size());
}

TEST_CASE("malformed framing reports the offending offset") {
  auto r = decode_request_complete("PUT /x HTTP/1.1\r\n\r\n");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().offset == 0);

  auto bad_version = decode_request_complete("GET /x HTTP/1.0\r\n\r\n");
  REQUIRE_FALSE(bad_version.ok());
  CHECK(bad_version.error().offset == 7);

  auto bad_header = decode_request_complete("GET /x HTTP/1.1\r\nno-colon-here\r\n\r\n");
  CHECK_FALSE(bad_header.ok());

  auto bad_target = decode_request_complete("GET x HTTP/1.1\r\n\r\n");
  CHECK_FALSE(bad_target.ok());
}

TEST_CASE("response encoding carries content-length iff body non-empty") {
  Response ok = make_response(200, "hello", "text/plain");
  std::string bytes = encode_response(ok);
  CHECK(bytes.find("Content-Length: 5") != std::string::npos);

  Response empty = make_response(404);
  CHECK(encode_response(empty).find("Content-Length") == std::string::npos);

  auto decoded = decode_response_complete(bytes);
  REQUIRE(decoded.ok());
  CHECK(decoded.value() == ok);
}

TEST_CASE("206 responses must carry content-range") {
  Response r;
  r.status = 206;
  r.headers.set("Content-Range", format_content_range(0, 4, 100));
  r.body = "abcde";
  auto decoded = decode_response_complete(encode_response(r));
  REQUIRE(decoded.ok());
  CHECK(decoded.value() == r);

  Response bad;
  bad.status = 206;
  bad.body = "abcde";
  CHECK_FALSE(decode_response_complete(encode_response(bad)).ok());
}

TEST_CASE("round-trip property over random valid messages") {
  std::mt19937 rng(2024);
  const std::string targets[] = {"/catalog", "/data/a/b", "/locate?path=/x",
                                 "/stat/frames/f.gwf", "/subscribe"};
  const std::string names[] = {"Range", "X-Fed-Token", "Accept", "X-Custom-Header"};
  for (int round = 0; round < 500; ++round) {
    Request r;
    r.method = rng() % 2 == 0 ? Method::get : Method::post;
    r.target = targets[rng() % std::size(targets)];
    int n_headers = static_cast<int>(rng() % 4);
    for (int h = 0; h < n_headers; ++h) {
      r.headers.add(names[rng() % std::size(names)] + std::to_string(h),
                    "value-" + std::to_string(rng() % 1000));
    }
    std::size_t body_len = rng() % 64;
    for (std::size_t i = 0; i < body_len; ++i) {
      r.body.push_back(static_cast<char>(rng() % 256));
    }
    auto decoded = decode_request_complete(encode_request(r));
    REQUIRE(decoded.ok());
    CHECK(decoded.value() == r);

    Response resp;
    const int statuses[] = {200, 400, 401, 403, 404, 429, 502, 503};
    resp.status = statuses[rng() % std::size(statuses)];
    for (std::size_t i = 0; i < body_len; ++i) {
      resp.body.push_back(static_cast<char>(rng() % 256));
    }
    if (rng() % 2) resp.headers.add("Content-Type", "application/octet-stream");
    auto rt = decode_response_complete(encode_response(resp));
    REQUIRE(rt.ok());
    CHECK(rt.value() == resp);
  }
}

TEST_CASE("incremental decode consumes exactly one message") {
  Request a;
  a.target = "/stat/x";
  Request b;
  b.method = Method::post;
  b.target = "/subscribe";
  b.body = "{}";
  std::string stream = encode_request(a) + encode_request(b);

  auto first = decode_request(stream);
  REQUIRE(first.status == DecodeStatus::ok);
  CHECK(*first.value == a);
  auto second = decode_request(std::string_view(stream).substr(first.consumed));
  REQUIRE(second.status == DecodeStatus::ok);
  CHECK(*second.value == b);
  CHECK(first.consumed + second.consumed == stream.size());

  // Partial prefixes of a valid message are incomplete, never errors.
  std::string one = encode_request(b);
  for (std::size_t cut = 0; cut < one.size(); ++cut) {
    auto partial = decode_request(std::string_view(one).substr(0, cut));
    CHECK(partial.status == DecodeStatus::incomplete);
  }
}

TEST_CASE("range header parsing") {
  auto r = parse_range_header("bytes=0-33554431");
  REQUIRE(r.has_value());
  CHECK(r->first == 0);
  CHECK(*r->last == 33554431);

  auto open = parse_range_header("bytes=100-");
  REQUIRE(open.has_value());
  CHECK(open->first == 100);
  CHECK_FALSE(open->last.has_value());

  CHECK_FALSE(parse_range_header("bytes=5-2").has_value());
  CHECK_FALSE(parse_range_header("items=0-4").has_value());
  CHECK_FALSE(parse_range_header("bytes=-4").has_value());

  CHECK(format_range_header({0, 99}) == "bytes=0-99");
  CHECK(format_range_header({7, std::nullopt}) == "bytes=7-");
  CHECK(format_content_range(0, 4, 100) == "bytes 0-4/100");
}

TEST_CASE("query parsing and percent decoding") {
  Request r;
  r.target = "/locate?path=/frames/O2%20x/a&flag";
  CHECK(r.path() == "/locate");
  auto q = r.query();
  REQUIRE(q.size() == 2);
  CHECK(q[0].first == "path");
  CHECK(q[0].second == "/frames/O2 x/a");
  CHECK(q[1].first == "flag");
}
