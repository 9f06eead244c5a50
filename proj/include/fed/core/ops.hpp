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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fed/core/model.hpp"
#include "fed/util/expected.hpp"

namespace fed::core {

/// Splits content into content-hashed chunks that tile it exactly.
/// Empty content yields an empty list. chunk_size must be >= 1.
std::vector<Chunk> chunk_file(std::string_view content, std::uint64_t chunk_size);

/// Builds a FileEntry (chunks + whole-file digest) for `content`.
FileEntry make_file_entry(const LogicalPath& path, std::string_view content,
                          std::uint64_t chunk_size, std::string acl_tag);

/// Chunk indices [first, last] overlapping the byte range [offset, offset+length).
/// Empty ranges and empty files yield no span.
struct ChunkSpan {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};
std::optional<ChunkSpan> chunks_for_range(const FileEntry& entry, std::uint64_t offset,
                                          std::uint64_t length);

struct VerifyVerdict {
  enum class Kind { ok, chunk_mismatch, whole_file_mismatch };
  Kind kind = Kind::ok;
  std::size_t chunk_index = 0;  // valid when kind == chunk_mismatch

  bool ok() const { return kind == Kind::ok; }
  static VerifyVerdict pass() { return {Kind::ok, 0}; }
  static VerifyVerdict chunk(std::size_t index) { return {Kind::chunk_mismatch, index}; }
  static VerifyVerdict whole_file() { return {Kind::whole_file_mismatch, 0}; }

  friend bool operator==(const VerifyVerdict&, const VerifyVerdict&) = default;
};

/// Checks content against an entry: size, then each chunk digest in order,
/// then the whole-file digest. Mismatch is a verdict, not an error.
VerifyVerdict verify_file(std::string_view content, const FileEntry& entry);

/// Site-local variant configuration: variant name -> replacement target.
using SiteConfig = std::map<std::string, std::string>;

/// Replaces the symlink prefix of `path` by the configured target (or the
/// default target when unconfigured). Paths not under any symlink pass
/// through unchanged. Resolution is single-level by construction.
LogicalPath resolve_variant(const LogicalPath& path,
                            const std::vector<VariantSymlink>& symlinks,
                            const SiteConfig& site_config);

enum class AclDecision { allowed, forbidden, unknown_path };

/// True access decision for a catalog entry. Anonymous (no principal) is
/// always forbidden; unknown paths are reported distinctly.
AclDecision acl_allows(const Catalog& catalog, const std::optional<Principal>& principal,
                       const LogicalPath& path);

struct CatalogBuildInput {
  /// Logical path -> file content.
  std::map<std::string, std::string> tree;
  /// Path prefix -> ACL tag; files take the tag of their longest matching
  /// prefix. Every file must match at least one prefix.
  std::map<std::string, std::string> acl_spec;
  /// Tag -> member DNs. Tags referenced by acl_spec must be defined here.
  std::map<std::string, std::set<std::string>> acl_groups;
  std::vector<VariantSymlink> symlinks;
  std::uint64_t chunk_size = kDefaultChunkSize;
};

struct CatalogBuildError {
  std::vector<std::string> problems;
  std::string to_string() const;
};

/// Deterministic catalog construction; revision becomes prev_revision + 1.
Expected<Catalog, CatalogBuildError> build_catalog(const CatalogBuildInput& input,
                                                   std::uint64_t prev_revision,
                                                   std::int64_t generated_at);

/// Structural invariants shared by build and parse: acl tags resolve, chunks
/// tile files, path uniqueness across files and symlinks.
std::vector<std::string> validate_catalog(const Catalog& catalog);

}  // namespace fed::core
