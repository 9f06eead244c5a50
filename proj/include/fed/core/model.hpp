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

#include "fed/core/digest.hpp"
#include "fed/core/path.hpp"

namespace fed::core {

/// Default transfer/caching unit: 32 MiB.
inline constexpr std::uint64_t kDefaultChunkSize = 32ull * 1024 * 1024;

/// Authenticated identity (DN-like opaque string). Equality is exact bytes.
struct Principal {
  std::string dn;
  auto operator<=>(const Principal&) const = default;
};

/// Bearer-token to principal mapping, local to each node. Unknown tokens map
/// to no principal (anonymous).
class TokenTable {
 public:
  TokenTable() = default;
  explicit TokenTable(std::map<std::string, std::string> token_to_dn);

  std::optional<Principal> lookup(std::string_view token) const;
  bool empty() const { return table_.empty(); }
  const std::map<std::string, std::string>& raw() const { return table_; }

 private:
  std::map<std::string, std::string> table_;
};

/// Content-hashed slice of a file. All chunks but the last have size equal to
/// the file's chunk_size; offsets tile the file from 0.
struct Chunk {
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
  Digest sha256{};

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct FileEntry {
  LogicalPath path;
  std::uint64_t size = 0;
  std::uint64_t chunk_size = kDefaultChunkSize;
  std::vector<Chunk> chunks;
  Digest file_sha256{};
  std::string acl_tag;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

/// Namespace link whose target is chosen per site. Resolution is one level:
/// a target never traverses another variant symlink.
struct VariantSymlink {
  LogicalPath path;
  std::string variant_name;
  LogicalPath default_target;

  friend bool operator==(const VariantSymlink&, const VariantSymlink&) = default;
};

struct AclGroup {
  std::string tag;
  std::set<Principal> members;

  bool contains(const Principal& p) const { return members.count(p) != 0; }
  friend bool operator==(const AclGroup&, const AclGroup&) = default;
};

/// Versioned public namespace. Catalog content carries no payload bytes and
/// is world-readable; data access is authorized separately per entry ACL tag.
struct Catalog {
  std::uint64_t revision = 0;
  std::int64_t generated_at = 0;
  std::map<LogicalPath, FileEntry> files;
  std::vector<VariantSymlink> symlinks;
  std::map<std::string, AclGroup> acls;

  const FileEntry* find(const LogicalPath& path) const {
    auto it = files.find(path);
    return it == files.end() ? nullptr : &it->second;
  }
  friend bool operator==(const Catalog&, const Catalog&) = default;
};

enum class NodeRole { origin, cache, redirector };

const char* node_role_name(NodeRole role);
std::optional<NodeRole> node_role_from_name(std::string_view name);

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct NodeInfo {
  std::string node_id;
  NodeRole role = NodeRole::origin;
  std::string endpoint;  // host:port
  GeoPoint geo;

  friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

}  // namespace fed::core
