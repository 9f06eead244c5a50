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

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "fed/cache/index.hpp"
#include "fed/storage/chunk_store.hpp"
#include "fed/util/clock.hpp"
#include "fed/util/expected.hpp"

namespace fed::cache {

/// Capacity-bounded chunk cache on disk: content-addressed files plus an LRU
/// index persisted as `<root>/index.json`. A missing or corrupt index is
/// rebuilt from a directory scan (recency seeded from file mtimes).
class CacheStore {
 public:
  CacheStore(std::filesystem::path root, std::uint64_t capacity,
             std::shared_ptr<Clock> clock = system_clock_instance());

  Expected<Ok, std::string> open();

  bool contains(const core::Digest& digest) const;

  /// Reads a slice of a cached chunk, refreshing its recency. Fails if the
  /// chunk is not cached (callers race with eviction by design).
  Expected<std::string, std::string> read(const core::Digest& digest,
                                          std::uint64_t offset, std::uint64_t length);

  /// Persists a verified chunk and admits it, evicting as needed.
  /// Returns false when the chunk exceeds capacity (pass-through).
  Expected<bool, std::string> admit(const core::Digest& digest, std::string_view bytes);

  void persist_index();

  CacheIndex& index() { return index_; }
  const CacheIndex& index() const { return index_; }
  const std::filesystem::path& root() const { return store_.root(); }

 private:
  storage::ChunkStore store_;
  CacheIndex index_;
  std::mutex admit_mutex_;  // serializes evict+write+insert transactions
};

}  // namespace fed::cache
