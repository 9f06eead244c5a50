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

#include "fed/redirector/redirector_core.hpp"

#include "fed/core/catalog_json.hpp"
#include "fed/core/ops.hpp"
#include "fed/util/log.hpp"

namespace fed::redirector {

using core::LogicalPath;
using core::NodeInfo;
using nlohmann::json;
using wire::Request;
using wire::Response;

RedirectorCore::RedirectorCore(double ttl_seconds, std::shared_ptr<Clock> clock,
                               CatalogFetcher fetch_catalog)
    : ttl_seconds_(ttl_seconds),
      clock_(std::move(clock)),
      fetch_catalog_(std::move(fetch_catalog)) {}

Expected<Ok, std::string> RedirectorCore::subscribe(const NodeInfo& info,
                                                    std::uint64_t revision) {
  if (info.role != core::NodeRole::origin) {
    return std::string("only origins may subscribe");
  }

  std::shared_ptr<const core::Catalog> catalog;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(info.node_id);
    if (it != entries_.end() && it->second.catalog != nullptr &&
        it->second.catalog_revision == revision) {
      catalog = it->second.catalog;  // unchanged revision: reuse
    }
  }
  if (catalog == nullptr && fetch_catalog_) {
    // Fetched outside the lock; subscribes are rare and fetches may be slow.
    auto bytes = fetch_catalog_(info.endpoint);
    if (bytes.ok()) {
      auto parsed = core::catalog_from_json(bytes.value());
      if (parsed.ok()) {
        catalog = std::make_shared<const core::Catalog>(std::move(parsed.value()));
      } else {
        FED_LOG_WARN("redirector", "catalog from %s rejected: %s",
                     info.endpoint.c_str(), parsed.error().c_str());
      }
    } else {
      FED_LOG_WARN("redirector", "catalog fetch from %s failed: %s",
                   info.endpoint.c_str(), bytes.error().c_str());
    }
  }

  std::lock_guard<std::mutex> lock(mutex_);
  Entry& entry = entries_[info.node_id];
  entry.info = info;
  entry.revision = revision;
  entry.expires_at = clock_->now() + ttl_seconds_;
  if (catalog != nullptr) {
    entry.catalog = catalog;
    entry.catalog_revision = catalog->revision;
  }
  return Ok{};
}

std::vector<NodeInfo> RedirectorCore::locate(const LogicalPath& path) {
  std::vector<NodeInfo> result;
  std::lock_guard<std::mutex> lock(mutex_);
  prune_locked(clock_->now());
  for (const auto& [node_id, entry] : entries_) {
    if (entry.catalog == nullptr) continue;
    bool contains = entry.catalog->find(path) != nullptr;
    if (!contains) {
      // A default-resolved variant path is part of the namespace too.
      LogicalPath resolved = core::resolve_variant(path, entry.catalog->symlinks, {});
      contains = resolved != path && entry.catalog->find(resolved) != nullptr;
    }
    if (contains) result.push_back(entry.info);
  }
  return result;  // entries_ is ordered by node_id already
}

std::size_t RedirectorCore::live_entries() const {
  std::lock_guard<std::mutex> lock(mutex_);
  double now = clock_->now();
  std::size_t n = 0;
  for (const auto& [id, entry] : entries_) {
    if (entry.expires_at > now) ++n;
  }
  return n;
}

void RedirectorCore::prune_locked(double now) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.expires_at <= now) {
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
}

Response RedirectorCore::handle(const Request& request) {
  std::string_view path = request.path();

  if (request.method == wire::Method::post && path == "/subscribe") {
    json body = json::parse(request.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded() || !body.is_object() || !body.contains("revision") ||
        !body["revision"].is_number_unsigned()) {
      return wire::make_error_response(400, "subscribe body must carry node + revision");
    }
    auto info = core::node_info_from_json(body);
    if (!info.ok()) return wire::make_error_response(400, info.error());
    auto subscribed = subscribe(info.value(), body["revision"].get<std::uint64_t>());
    if (!subscribed.ok()) return wire::make_error_response(400, subscribed.error());
    json ack{{"subscribed", true}, {"ttl_seconds", ttl_seconds_}};
    return wire::make_json_response(200, ack.dump());
  }

  if (request.method == wire::Method::get && path == "/locate") {
    std::string raw_path;
    for (const auto& [key, value] : request.query()) {
      if (key == "path") raw_path = value;
    }
    if (raw_path.empty()) {
      return wire::make_error_response(400, "locate requires ?path=");
    }
    auto located = locate(LogicalPath::normalize(raw_path));
    json arr = json::array();
    for (const auto& info : located) arr.push_back(core::node_info_to_json(info));
    return wire::make_json_response(200, arr.dump());
  }

  if (request.method == wire::Method::get && path == "/status") {
    return wire::make_json_response(200, status_json().dump());
  }

  return wire::make_error_response(404, "no such endpoint");
}

json RedirectorCore::status_json() const {
  std::lock_guard<std::mutex> lock(mutex_);
  double now = clock_->now();
  json entries = json::array();
  for (const auto& [node_id, entry] : entries_) {
    if (entry.expires_at <= now) continue;
    json e = core::node_info_to_json(entry.info);
    e["revision"] = entry.revision;
    e["expires_in_seconds"] = entry.expires_at - now;
    e["catalog_cached"] = entry.catalog != nullptr;
    entries.push_back(std::move(e));
  }
  return json{{"role", "redirector"},
              {"ttl_seconds", ttl_seconds_},
              {"entries", std::move(entries)}};
}

}  // namespace fed::redirector
