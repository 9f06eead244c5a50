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

#include "fed/origin/origin_core.hpp"

namespace fed::origin {

using wire::Method;
using wire::Request;
using wire::Response;

std::optional<core::LogicalPath> parse_prefixed_path(const Request& request,
                                                     std::string_view prefix) {
  std::string_view path = request.path();
  if (path.size() <= prefix.size() || !path.starts_with(prefix)) return std::nullopt;
  return core::LogicalPath::normalize(wire::percent_decode(path.substr(prefix.size())));
}

Expected<ResolvedRange, Response> resolve_request_range(const Request& request,
                                                        const core::FileEntry& entry) {
  auto header = request.header("Range");
  if (!header.has_value()) {
    return ResolvedRange{0, entry.size, false};
  }
  auto range = wire::parse_range_header(*header);
  if (!range.has_value()) {
    return wire::make_error_response(400, "malformed Range header");
  }
  if (range->first >= entry.size) {
    return wire::make_error_response(400, "range start beyond end of file");
  }
  std::uint64_t last = entry.size - 1;
  if (range->last.has_value()) last = std::min(last, *range->last);
  return ResolvedRange{range->first, last - range->first + 1, true};
}

void OriginCore::load_catalog(core::Catalog catalog) {
  auto snapshot = std::make_shared<CatalogSnapshot>();
  snapshot->canonical_bytes = core::catalog_to_json(catalog);
  snapshot->catalog = std::move(catalog);
  std::lock_guard<std::mutex> lock(snapshot_mutex_);
  snapshot_ = std::move(snapshot);
}

bool OriginCore::has_catalog() const {
  std::lock_guard<std::mutex> lock(snapshot_mutex_);
  return snapshot_ != nullptr;
}

std::uint64_t OriginCore::catalog_revision() const {
  std::lock_guard<std::mutex> lock(snapshot_mutex_);
  return snapshot_ ? snapshot_->catalog.revision : 0;
}

std::shared_ptr<const CatalogSnapshot> OriginCore::snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mutex_);
  return snapshot_;
}

ServedResponse OriginCore::handle(const Request& request,
                                  std::shared_ptr<void>& conn_admission) {
  ServedResponse served;
  std::string_view path = request.path();

  if (request.method == Method::get && path == "/catalog") {
    auto snap = snapshot();
    if (!snap) {
      served.response = wire::make_error_response(404, "no catalog published");
    } else {
      served.response = wire::make_json_response(200, snap->canonical_bytes);
    }
    return served;
  }

  if (request.method == Method::get && path.starts_with("/stat/")) {
    auto snap = snapshot();
    auto logical = parse_prefixed_path(request, "/stat");
    if (!snap || !logical) {
      served.response = wire::make_error_response(404, "unknown path");
      return served;
    }
    const core::FileEntry* entry = snap->catalog.find(*logical);
    if (entry == nullptr) {
      served.response = wire::make_error_response(404, "unknown path");
      return served;
    }
    nlohmann::json j = core::file_entry_to_json(*entry);
    j["path"] = entry->path.str();
    served.response = wire::make_json_response(200, j.dump());
    return served;
  }

  if (request.method == Method::get && path.starts_with("/data/")) {
    return handle_data(request, conn_admission);
  }

  if (request.method == Method::get && path == "/status") {
    served.response = wire::make_json_response(200, status_json().dump());
    return served;
  }

  served.response = wire::make_error_response(404, "no such endpoint");
  return served;
}

ServedResponse OriginCore::handle_data(const Request& request,
                                       std::shared_ptr<void>& conn_admission) {
  ServedResponse served;

  auto token = request.header(wire::kAuthHeader);
  std::optional<core::Principal> principal;
  if (token.has_value()) principal = config_.tokens.lookup(*token);
  if (!principal.has_value()) {
    served.response = wire::make_error_response(401, "missing or unknown token");
    return served;
  }

  auto snap = snapshot();
  auto logical = parse_prefixed_path(request, "/data");
  if (!snap || !logical) {
    served.response = wire::make_error_response(404, "unknown path");
    return served;
  }

  // ACL gate before any byte of data is considered.
  switch (core::acl_allows(snap->catalog, principal, *logical)) {
    case core::AclDecision::unknown_path:
      served.response = wire::make_error_response(404, "unknown path");
      return served;
    case core::AclDecision::forbidden:
      served.response = wire::make_error_response(403, "access denied");
      return served;
    case core::AclDecision::allowed:
      break;
  }

  const core::FileEntry* entry = snap->catalog.find(*logical);
  auto range = resolve_request_range(request, *entry);
  if (!range.ok() && entry->size > 0) {
    served.response = range.error();
    return served;
  }

  // One transfer slot per connection, taken on the first data request.
  if (conn_admission == nullptr) {
    auto result = ledger_.admit(*principal);
    switch (result.outcome) {
      case TransferLedger::Outcome::refused_principal_limit:
        served.response =
            wire::make_error_response(429, "per-principal transfer limit reached");
        return served;
      case TransferLedger::Outcome::refused_memory:
        served.response = wire::make_error_response(503, "server memory exhausted");
        return served;
      case TransferLedger::Outcome::crashed:
        // Memory cap breached in crash mode: the server is gone. Every
        // connection dies; nothing is sent back.
        ledger_.reset();
        served.crash_triggered = true;
        return served;
      case TransferLedger::Outcome::admitted:
        conn_admission =
            std::make_shared<AdmissionGuard>(ledger_, std::move(*result.admission));
        break;
    }
  }

  served.snapshot = snap;
  served.entry = entry;
  if (entry->size == 0) {
    served.offset = 0;
    served.length = 0;
    served.response = wire::make_response(200);
    served.response.headers.set("Content-Type", "application/octet-stream");
    return served;
  }

  served.offset = range->offset;
  served.length = range->length;
  if (range->partial) {
    served.response.status = 206;
    served.response.headers.set(
        "Content-Range", wire::format_content_range(range->offset,
                                                    range->offset + range->length - 1,
                                                    entry->size));
  } else {
    served.response.status = 200;
  }
  served.response.headers.set("Content-Type", "application/octet-stream");
  return served;
}

nlohmann::json OriginCore::status_json() const {
  return nlohmann::json{{"role", "origin"},
                        {"node_id", config_.info.node_id},
                        {"endpoint", config_.info.endpoint},
                        {"catalog_revision", catalog_revision()},
                        {"bytes_served", bytes_served_.load()},
                        {"ledger", ledger_.stats_json()}};
}

}  // namespace fed::origin
