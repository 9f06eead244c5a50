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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fed/net/tcp.hpp"
#include "fed/wire/http.hpp"

namespace fed::net {

/// Streaming response channel. A handler either sends a complete Response or
/// begins a head and writes the body incrementally; abort() tears the
/// connection down mid-body so the peer observes a short read.
class ResponseWriter {
 public:
  virtual ~ResponseWriter() = default;

  virtual bool begin(int status, const wire::Headers& headers,
                     std::uint64_t content_length) = 0;
  virtual bool write(std::string_view chunk) = 0;
  virtual void abort() = 0;

  bool send(const wire::Response& response) {
    if (!begin(response.status, response.headers, response.body.size())) return false;
    return response.body.empty() ? true : write(response.body);
  }
};

/// Per-connection state passed to every request on that connection. Nodes
/// hang RAII state (e.g. transfer admissions) off `user_data`; it is
/// destroyed when the connection closes.
struct ConnContext {
  std::uint64_t conn_id = 0;
  std::shared_ptr<void> user_data;
};

using HttpHandler =
    std::function<void(const wire::Request&, ConnContext&, ResponseWriter&)>;

/// Thread-per-connection HTTP/1.1 server over the wire-protocol codec.
/// Keep-alive by default; `Connection: close` honored.
class HttpServer {
 public:
  explicit HttpServer(HttpHandler handler);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  Expected<Ok, std::string> start(const std::string& listen_endpoint);
  void stop();

  const std::string& endpoint() const { return endpoint_; }
  std::size_t active_connections() const;

  /// Forcibly drops every open connection (the origin's crash mode).
  void abort_all_connections();

  void set_io_timeout(double seconds) { io_timeout_ = seconds; }

 private:
  struct Conn;
  void accept_loop();
  void serve_connection(std::shared_ptr<Conn> conn);

  HttpHandler handler_;
  TcpListener listener_;
  std::string endpoint_;
  std::thread accept_thread_;
  std::atomic<bool> stopping_{false};
  double io_timeout_ = 30.0;

  mutable std::mutex mutex_;
  std::map<std::uint64_t, std::shared_ptr<Conn>> conns_;
  std::vector<std::thread> done_threads_;
  std::uint64_t next_conn_id_ = 1;
};

}  // namespace fed::net
