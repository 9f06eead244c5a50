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
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fed/core/digest.hpp"
#include "fed/util/clock.hpp"

namespace fed::cache {

/// LRU index over cached chunks. total_bytes <= capacity holds after every
/// completed admission; eviction picks the least-recently-accessed entries,
/// oldest first. Thread-safe; each call is one atomic transaction.
///
/// Recency ordering is exact (an intrusive list); the persisted
/// last_access_at timestamps reconstruct it across restarts.
class CacheIndex {
 public:
  explicit CacheIndex(std::uint64_t capacity,
                      std::shared_ptr<Clock> clock = system_clock_instance())
      : capacity_(capacity), clock_(std::move(clock)) {}

  struct AdmitResult {
    bool admitted = false;  // false: size > capacity, serve pass-through
    std::vector<core::Digest> evicted;
  };

  /// Admits a chunk as most-recently-used, evicting as needed. Admitting a
  /// present chunk only refreshes recency.
  AdmitResult admit(const core::Digest& digest, std::uint64_t size);

  /// Refreshes recency; false when absent.
  bool touch(const core::Digest& digest);
  bool contains(const core::Digest& digest) const;
  /// Removes an entry (used when a disk file disappears under us).
  void forget(const core::Digest& digest);

  std::uint64_t total_bytes() const;
  std::uint64_t capacity() const { return capacity_; }
  std::size_t entry_count() const;
  std::uint64_t evictions() const;

  /// Persistent form: {hex digest: {"size": n, "last_access_at": seconds}}.
  nlohmann::json to_json() const;

  /// Seeds entries ordered by last_access_at (ties by digest); used when
  /// loading index.json or rebuilding from a directory scan.
  void load(const std::vector<std::tuple<core::Digest, std::uint64_t, double>>& entries);

  /// Entries oldest-first, for inspection in tests.
  std::vector<std::pair<core::Digest, std::uint64_t>> entries_by_age() const;

 private:
  struct Entry {
    std::uint64_t size = 0;
    double last_access_at = 0.0;                // wall clock, persisted
    std::list<core::Digest>::iterator lru_pos;  // position in lru_, MRU front
  };

  void touch_locked(const core::Digest& digest, Entry& entry);

  std::uint64_t capacity_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mutex_;
  std::map<core::Digest, Entry> entries_;
  std::list<core::Digest> lru_;  // front = most recent
  std::uint64_t total_ = 0;
  std::uint64_t evictions_ = 0;
};

}  // namespace fed::cache
