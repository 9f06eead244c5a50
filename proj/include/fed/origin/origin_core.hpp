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
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "fed/core/catalog_json.hpp"
#include "fed/core/model.hpp"
#include "fed/core/ops.hpp"
#include "fed/origin/ledger.hpp"
#include "fed/wire/http.hpp"

namespace fed::origin {

/// Immutable published state; swapped atomically on reload so in-flight
/// transfers finish against the revision they started with.
struct CatalogSnapshot {
  core::Catalog catalog;
  std::string canonical_bytes;
};

/// Request decision plus a body descriptor. For data responses the body is
/// not materialized here: the real server streams it from the chunk store,
/// the simulator models it by length. Both run the same decision path.
struct ServedResponse {
  wire::Response response;

  // Data-plane descriptor, set iff this is an admitted data response.
  std::shared_ptr<const CatalogSnapshot> snapshot;
  const core::FileEntry* entry = nullptr;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;

  /// Crash-mode cap breach: the transport must abort every connection and
  /// the ledger has been reset.
  bool crash_triggered = false;

  bool has_data_body() const { return entry != nullptr; }
  /// Total body bytes this response will carry on the wire.
  std::uint64_t body_bytes() const { return has_data_body() ? length : response.body.size(); }
};

/// Authoritative-server request logic: public catalog/stat, authenticated
/// ranged data with ledger admission, status counters. Transport-free.
class OriginCore {
 public:
  struct Config {
    core::NodeInfo info;
    core::TokenTable tokens;
    TransferLedger::Config ledger;
  };

  explicit OriginCore(Config config)
      : config_(std::move(config)), ledger_(config_.ledger) {}

  void load_catalog(core::Catalog catalog);
  bool has_catalog() const;
  std::uint64_t catalog_revision() const;  // 0 when none loaded
  std::shared_ptr<const CatalogSnapshot> snapshot() const;

  /// Handles one request. `conn_admission` is the connection's transfer
  /// slot: empty until the first admitted data request, then reused so the
  /// admission spans the connection.
  ServedResponse handle(const wire::Request& request,
                        std::shared_ptr<void>& conn_admission);

  TransferLedger& ledger() { return ledger_; }
  const core::NodeInfo& info() const { return config_.info; }
  void set_endpoint(std::string endpoint) { config_.info.endpoint = std::move(endpoint); }

  std::uint64_t bytes_served() const { return bytes_served_.load(); }
  void add_bytes_served(std::uint64_t n) { bytes_served_ += n; }

  nlohmann::json status_json() const;

 private:
  ServedResponse handle_data(const wire::Request& request,
                             std::shared_ptr<void>& conn_admission);

  Config config_;
  TransferLedger ledger_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const CatalogSnapshot> snapshot_;
  std::atomic<std::uint64_t> bytes_served_{0};
};

/// Shared by origin and cache: extracts the logical path from a
/// "/data/<path>" or "/stat/<path>" target.
std::optional<core::LogicalPath> parse_prefixed_path(const wire::Request& request,
                                                     std::string_view prefix);

/// Range resolution against an entry: full file when no Range header.
struct ResolvedRange {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  bool partial = false;  // -> 206 with Content-Range
};
Expected<ResolvedRange, wire::Response> resolve_request_range(
    const wire::Request& request, const core::FileEntry& entry);

}  // namespace fed::origin
