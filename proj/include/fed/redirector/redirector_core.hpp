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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "fed/core/model.hpp"
#include "fed/util/clock.hpp"
#include "fed/util/expected.hpp"
#include "fed/wire/http.hpp"

namespace fed::redirector {

/// Federation directory: origins subscribe with a TTL, clients ask which
/// origins hold a path. Subscriptions are trusted; membership is answered
/// from each origin's catalog, fetched when the advertised revision changes.
class RedirectorCore {
 public:
  /// endpoint -> canonical catalog bytes (HTTP GET /catalog in production,
  /// stubs in tests and the simulator).
  using CatalogFetcher =
      std::function<Expected<std::string, std::string>(const std::string& endpoint)>;

  RedirectorCore(double ttl_seconds, std::shared_ptr<Clock> clock,
                 CatalogFetcher fetch_catalog);

  /// POST /subscribe, GET /locate, GET /status.
  wire::Response handle(const wire::Request& request);

  Expected<Ok, std::string> subscribe(const core::NodeInfo& info,
                                      std::uint64_t revision);
  /// Live origins whose namespace contains `path` (directly or via a
  /// default-resolved variant symlink), ordered by node_id.
  std::vector<core::NodeInfo> locate(const core::LogicalPath& path);

  std::size_t live_entries() const;
  double ttl_seconds() const { return ttl_seconds_; }
  nlohmann::json status_json() const;

 private:
  struct Entry {
    core::NodeInfo info;
    std::uint64_t revision = 0;
    double expires_at = 0.0;
    std::shared_ptr<const core::Catalog> catalog;  // null until fetched
    std::uint64_t catalog_revision = 0;
  };

  void prune_locked(double now);

  double ttl_seconds_;
  std::shared_ptr<Clock> clock_;
  CatalogFetcher fetch_catalog_;
  mutable std::mutex mutex_;
  std::map<std::string, Entry> entries_;
};

}  // namespace fed::redirector
