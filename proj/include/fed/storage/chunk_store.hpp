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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fed/core/digest.hpp"
#include "fed/util/expected.hpp"

namespace fed::storage {

/// Content-addressed chunk files under `<root>/data/<hex[0:2]>/<sha256>`.
/// Writes are staged in `<root>/tmp` and renamed into place, so a chunk file
/// either exists complete or not at all.
class ChunkStore {
 public:
  ChunkStore() = default;
  explicit ChunkStore(std::filesystem::path root) : root_(std::move(root)) {}

  Expected<Ok, std::string> init();

  bool has(const core::Digest& digest) const;
  std::optional<std::uint64_t> size_of(const core::Digest& digest) const;

  Expected<std::string, std::string> read(const core::Digest& digest,
                                          std::uint64_t offset,
                                          std::uint64_t length) const;
  Expected<std::string, std::string> read_all(const core::Digest& digest) const;

  /// Idempotent: returns true if the chunk was written, false if it was
  /// already present (no rewrite).
  Expected<bool, std::string> write(const core::Digest& digest,
                                    std::string_view bytes);

  Expected<Ok, std::string> remove(const core::Digest& digest);

  struct ScanEntry {
    core::Digest digest;
    std::uint64_t size = 0;
    double mtime = 0.0;
  };
  /// All chunk files on disk, sorted by digest. Non-digest names are skipped.
  std::vector<ScanEntry> scan() const;

  std::filesystem::path path_of(const core::Digest& digest) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  mutable std::uint64_t stage_counter_ = 0;
};

}  // namespace fed::storage
