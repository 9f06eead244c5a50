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

#include "fed/net/http_server.hpp"

#include "fed/util/log.hpp"

namespace fed::net {

using wire::DecodeStatus;
using wire::Request;

struct HttpServer::Conn {
  std::uint64_t id = 0;
  TcpStream stream;
  std::thread thread;
};

namespace {

class ConnWriter final : public ResponseWriter {
 public:
  explicit ConnWriter(TcpStream& stream) : stream_(stream) {}

  bool begin(int status, const wire::Headers& headers,
             std::uint64_t content_length) override {
    if (begun_) return false;
    begun_ = true;
    declared_ = content_length;
    std::string head = wire::encode_response_head(status, headers, content_length);
    io_ok_ = stream_.write_all(head);
    return io_ok_;
  }

  bool write(std::string_view chunk) override {
    if (!begun_ || aborted_ || !io_ok_) return false;
    if (written_ + chunk.size() > declared_) {
      // Overrun would corrupt framing; treat as handler bug and abort.
      aborted_ = true;
      return false;
    }
    io_ok_ = stream_.write_all(chunk);
    if (io_ok_) written_ += chunk.size();
    return io_ok_;
  }

  void abort() override { aborted_ = true; }

  bool begun() const { return begun_; }
  bool clean() const {
    return begun_ && !aborted_ && io_ok_ && written_ == declared_;
  }

 private:
  TcpStream& stream_;
  bool begun_ = false;
  bool aborted_ = false;
  bool io_ok_ = true;
  std::uint64_t declared_ = 0;
  std::uint64_t written_ = 0;
};

}  // namespace

HttpServer::HttpServer(HttpHandler handler) : handler_(std::move(handler)) {}

HttpServer::~HttpServer() { stop(); }

Expected<Ok, std::string> HttpServer::start(const std::string& listen_endpoint) {
  auto listener = TcpListener::bind(listen_endpoint);
  if (!listener) return listener.error();
  listener_ = std::move(listener.value());
  endpoint_ = listener_.endpoint();
  stopping_ = false;
  accept_thread_ = std::thread([this] { accept_loop(); });
  return Ok{};
}

void HttpServer::stop() {
  if (stopping_.exchange(true)) {
    if (accept_thread_.joinable()) accept_thread_.join();
    return;
  }
  listener_.close();
  if (accept_thread_.joinable()) accept_thread_.join();

  std::vector<std::shared_ptr<Conn>> open;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (auto& [id, conn] : conns_) open.push_back(conn);
  }
  for (auto& conn : open) conn->stream.shutdown_both();
  // Connection threads observe the dead socket and move themselves to
  // done_threads_; wait for all of them.
  while (true) {
    std::vector<std::thread> finished;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      finished.swap(done_threads_);
      if (finished.empty() && conns_.empty()) break;
    }
    for (auto& t : finished) {
      if (t.joinable()) t.join();
    }
    if (finished.empty()) std::this_thread::yield();
  }
}

std::size_t HttpServer::active_connections() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return conns_.size();
}

void HttpServer::abort_all_connections() {
  std::lock_guard<std::mutex> lock(mutex_);
  for (auto& [id, conn] : conns_) conn->stream.shutdown_both();
}

void HttpServer::accept_loop() {
  while (!stopping_) {
    auto stream = listener_.accept();
    if (!stream.has_value()) break;
    stream->set_io_timeout(io_timeout_);

    auto conn = std::make_shared<Conn>();
    conn->stream = std::move(*stream);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      conn->id = next_conn_id_++;
      conns_.emplace(conn->id, conn);
      // Reap threads of connections that already finished.
      for (auto& t : done_threads_) {
        if (t.joinable()) t.join();
      }
      done_threads_.clear();
    }
    conn->thread = std::thread([this, conn] { serve_connection(conn); });
  }
}

void HttpServer::serve_connection(std::shared_ptr<Conn> conn) {
  ConnContext ctx;
  ctx.conn_id = conn->id;

  std::string buffer;
  char tmp[64 * 1024];
  bool keep_going = true;

  while (keep_going && !stopping_) {
    auto decoded = wire::decode_request(buffer);
    if (decoded.status == DecodeStatus::error) {
      conn->stream.write_all(
          wire::encode_response(wire::make_error_response(400, decoded.error.message)));
      break;
    }
    if (decoded.status == DecodeStatus::ok) {
      buffer.erase(0, decoded.consumed);
      const Request& request = *decoded.value;
      ConnWriter writer(conn->stream);
      handler_(request, ctx, writer);
      if (!writer.begun()) {
        conn->stream.write_all(
            wire::encode_response(wire::make_error_response(500, "handler sent nothing")));
        break;
      }
      if (!writer.clean()) break;  // aborted or peer gone: drop the connection
      auto connection = request.headers.get("Connection");
      if (connection.has_value() && *connection == "close") break;
      continue;
    }
    long n = conn->stream.read_some(tmp, sizeof tmp);
    if (n <= 0) keep_going = false;
    buffer.append(tmp, static_cast<std::size_t>(std::max(0L, n)));
  }

  conn->stream.close();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    conns_.erase(conn->id);
    done_threads_.push_back(std::move(conn->thread));
  }
}

}  // namespace fed::net
