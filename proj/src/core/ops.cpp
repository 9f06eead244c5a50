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

#include "fed/core/ops.hpp"

#include <algorithm>
#include <cassert>

namespace fed::core {

std::vector<Chunk> chunk_file(std::string_view content, std::uint64_t chunk_size) {
  assert(chunk_size >= 1);
  std::vector<Chunk> chunks;
  if (content.empty()) return chunks;
  chunks.reserve((content.size() + chunk_size - 1) / chunk_size);
  for (std::uint64_t offset = 0; offset < content.size(); offset += chunk_size) {
    std::uint64_t len = std::min<std::uint64_t>(chunk_size, content.size() - offset);
    Chunk c;
    c.offset = offset;
    c.size = len;
    c.sha256 = sha256(content.substr(offset, len));
    chunks.push_back(c);
  }
  return chunks;
}

FileEntry make_file_entry(const LogicalPath& path, std::string_view content,
                          std::uint64_t chunk_size, std::string acl_tag) {
  FileEntry entry;
  entry.path = path;
  entry.size = content.size();
  entry.chunk_size = chunk_size;
  entry.chunks = chunk_file(content, chunk_size);
  entry.file_sha256 = sha256(content);
  entry.acl_tag = std::move(acl_tag);
  return entry;
}

std::optional<ChunkSpan> chunks_for_range(const FileEntry& entry, std::uint64_t offset,
                                          std::uint64_t length) {
  if (length == 0 || entry.size == 0 || offset >= entry.size) return std::nullopt;
  std::uint64_t end = std::min(offset + length, entry.size);  // exclusive
  ChunkSpan span;
  span.first = static_cast<std::size_t>(offset / entry.chunk_size);
  span.last = static_cast<std::size_t>((end - 1) / entry.chunk_size);
  return span;
}

VerifyVerdict verify_file(std::string_view content, const FileEntry& entry) {
  if (content.size() != entry.size) return VerifyVerdict::whole_file();
  for (std::size_t i = 0; i < entry.chunks.size(); ++i) {
    const Chunk& c = entry.chunks[i];
    if (sha256(content.substr(c.offset, c.size)) != c.sha256) {
      return VerifyVerdict::chunk(i);
    }
  }
  if (sha256(content) != entry.file_sha256) return VerifyVerdict::whole_file();
  return VerifyVerdict::pass();
}

LogicalPath resolve_variant(const LogicalPath& path,
                            const std::vector<VariantSymlink>& symlinks,
                            const SiteConfig& site_config) {
  // Longest matching symlink prefix wins; at most one level is traversed.
  const VariantSymlink* best = nullptr;
  for (const auto& link : symlinks) {
    if (!path.is_under(link.path)) continue;
    if (best == nullptr || link.path.str().size() > best->path.str().size()) {
      best = &link;
    }
  }
  if (best == nullptr) return path;

  LogicalPath target = best->default_target;
  auto it = site_config.find(best->variant_name);
  if (it != site_config.end()) target = LogicalPath::normalize(it->second);
  std::string_view rest = path.remainder(best->path);
  if (rest.empty()) return target;
  return target.join(rest);
}

AclDecision acl_allows(const Catalog& catalog, const std::optional<Principal>& principal,
                       const LogicalPath& path) {
  const FileEntry* entry = catalog.find(path);
  if (entry == nullptr) return AclDecision::unknown_path;
  if (!principal.has_value()) return AclDecision::forbidden;
  auto group = catalog.acls.find(entry->acl_tag);
  if (group == catalog.acls.end()) return AclDecision::forbidden;
  return group->second.contains(*principal) ? AclDecision::allowed
                                            : AclDecision::forbidden;
}

std::string CatalogBuildError::to_string() const {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

Expected<Catalog, CatalogBuildError> build_catalog(const CatalogBuildInput& input,
                                                   std::uint64_t prev_revision,
                                                   std::int64_t generated_at) {
  CatalogBuildError err;
  Catalog catalog;
  catalog.revision = prev_revision + 1;
  catalog.generated_at = generated_at;

  if (input.chunk_size < 1) err.problems.push_back("chunk_size must be >= 1");

  // Normalized acl prefixes, longest-first assignment per file.
  std::vector<std::pair<LogicalPath, std::string>> prefixes;
  prefixes.reserve(input.acl_spec.size());
  for (const auto& [prefix, tag] : input.acl_spec) {
    prefixes.emplace_back(LogicalPath::normalize(prefix), tag);
    if (input.acl_groups.find(tag) == input.acl_groups.end()) {
      err.problems.push_back("acl_spec tag '" + tag + "' has no group definition");
    }
  }

  for (const auto& [tag, members] : input.acl_groups) {
    AclGroup group;
    group.tag = tag;
    for (const auto& dn : members) group.members.insert(Principal{dn});
    catalog.acls.emplace(tag, std::move(group));
  }

  for (const auto& link : input.symlinks) {
    VariantSymlink normalized;
    normalized.path = LogicalPath::normalize(link.path.str());
    normalized.variant_name = link.variant_name;
    normalized.default_target = LogicalPath::normalize(link.default_target.str());
    catalog.symlinks.push_back(std::move(normalized));
  }
  std::sort(catalog.symlinks.begin(), catalog.symlinks.end(),
            [](const VariantSymlink& a, const VariantSymlink& b) { return a.path < b.path; });
  for (std::size_t i = 1; i < catalog.symlinks.size(); ++i) {
    if (catalog.symlinks[i].path == catalog.symlinks[i - 1].path) {
      err.problems.push_back("duplicate symlink path " + catalog.symlinks[i].path.str());
    }
  }
  // One-level rule: a default target may not land under another symlink.
  for (const auto& link : catalog.symlinks) {
    for (const auto& other : catalog.symlinks) {
      if (link.default_target.is_under(other.path)) {
        err.problems.push_back("symlink " + link.path.str() +
                               " default target resolves through symlink " +
                               other.path.str());
      }
    }
  }

  if (input.chunk_size >= 1) {
    for (const auto& [raw_path, content] : input.tree) {
      LogicalPath path = LogicalPath::normalize(raw_path);
      const std::string* tag = nullptr;
      std::size_t best_len = 0;
      for (const auto& [prefix, prefix_tag] : prefixes) {
        if (path.is_under(prefix) && prefix.str().size() + 1 > best_len) {
          best_len = prefix.str().size() + 1;
          tag = &prefix_tag;
        }
      }
      if (tag == nullptr) {
        err.problems.push_back("no acl_spec prefix matches file " + path.str());
        continue;
      }
      if (catalog.files.count(path) != 0) {
        err.problems.push_back("duplicate file path " + path.str());
        continue;
      }
      catalog.files.emplace(path,
                            make_file_entry(path, content, input.chunk_size, *tag));
    }
  }

  for (const auto& link : catalog.symlinks) {
    if (catalog.files.count(link.path) != 0) {
      err.problems.push_back("path collision between file and symlink at " +
                             link.path.str());
    }
  }

  if (!err.problems.empty()) return err;
  return catalog;
}

std::vector<std::string> validate_catalog(const Catalog& catalog) {
  std::vector<std::string> problems;
  if (catalog.revision < 1) problems.push_back("revision must be >= 1");
  for (const auto& [path, entry] : catalog.files) {
    if (entry.path != path) {
      problems.push_back("entry path mismatch at " + path.str());
    }
    if (catalog.acls.find(entry.acl_tag) == catalog.acls.end()) {
      problems.push_back("file " + path.str() + " references unknown acl tag '" +
                         entry.acl_tag + "'");
    }
    if (entry.chunk_size < 1) {
      problems.push_back("file " + path.str() + " has chunk_size < 1");
      continue;
    }
    std::uint64_t expected_chunks =
        entry.size == 0 ? 0 : (entry.size + entry.chunk_size - 1) / entry.chunk_size;
    if (entry.chunks.size() != expected_chunks) {
      problems.push_back("file " + path.str() + " chunk count mismatch");
      continue;
    }
    std::uint64_t offset = 0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < entry.chunks.size(); ++i) {
      const Chunk& c = entry.chunks[i];
      bool last = i + 1 == entry.chunks.size();
      if (c.offset != offset || c.size == 0 || c.size > entry.chunk_size ||
          (!last && c.size != entry.chunk_size)) {
        problems.push_back("file " + path.str() + " chunks do not tile the file");
        break;
      }
      offset += c.size;
      total += c.size;
    }
    if (total != entry.size) {
      problems.push_back("file " + path.str() + " chunk sizes do not sum to size");
    }
  }
  for (const auto& link : catalog.symlinks) {
    if (catalog.files.count(link.path) != 0) {
      problems.push_back("path collision between file and symlink at " +
                         link.path.str());
    }
  }
  return problems;
}

}  // namespace fed::core
