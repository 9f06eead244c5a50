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

#include "fed/core/catalog_json.hpp"

#include "fed/core/ops.hpp"

namespace fed::core {

using nlohmann::json;

namespace {

json chunk_to_json(const Chunk& c) {
  return json{{"offset", c.offset}, {"size", c.size}, {"sha256", to_hex(c.sha256)}};
}

Expected<Chunk, std::string> chunk_from_json(const json& j) {
  if (!j.is_object() || !j.contains("offset") || !j.contains("size") ||
      !j.contains("sha256")) {
    return std::string("chunk entry missing offset/size/sha256");
  }
  Chunk c;
  if (!j["offset"].is_number_unsigned() || !j["size"].is_number_unsigned()) {
    return std::string("chunk offset/size must be non-negative integers");
  }
  c.offset = j["offset"].get<std::uint64_t>();
  c.size = j["size"].get<std::uint64_t>();
  auto digest = digest_from_hex(j["sha256"].get<std::string>());
  if (!digest) return std::string("chunk sha256 is not 64 hex chars");
  c.sha256 = *digest;
  return c;
}

}  // namespace

json file_entry_to_json(const FileEntry& entry) {
  json chunks = json::array();
  for (const Chunk& c : entry.chunks) chunks.push_back(chunk_to_json(c));
  return json{{"size", entry.size},
              {"chunk_size", entry.chunk_size},
              {"file_sha256", to_hex(entry.file_sha256)},
              {"acl_tag", entry.acl_tag},
              {"chunks", std::move(chunks)}};
}

Expected<FileEntry, std::string> file_entry_from_json(const json& j,
                                                      const LogicalPath& path) {
  if (!j.is_object()) return std::string("file entry must be an object");
  for (const char* key : {"size", "chunk_size", "file_sha256", "acl_tag", "chunks"}) {
    if (!j.contains(key)) return std::string("file entry missing '") + key + "'";
  }
  FileEntry entry;
  entry.path = path;
  if (!j["size"].is_number_unsigned() || !j["chunk_size"].is_number_unsigned()) {
    return std::string("file size/chunk_size must be non-negative integers");
  }
  entry.size = j["size"].get<std::uint64_t>();
  entry.chunk_size = j["chunk_size"].get<std::uint64_t>();
  auto digest = digest_from_hex(j["file_sha256"].get<std::string>());
  if (!digest) return std::string("file_sha256 is not 64 hex chars");
  entry.file_sha256 = *digest;
  entry.acl_tag = j["acl_tag"].get<std::string>();
  if (!j["chunks"].is_array()) return std::string("chunks must be an array");
  for (const auto& cj : j["chunks"]) {
    auto chunk = chunk_from_json(cj);
    if (!chunk) return chunk.error();
    entry.chunks.push_back(*chunk);
  }
  return entry;
}

std::string catalog_to_json(const Catalog& catalog) {
  json files = json::object();
  for (const auto& [path, entry] : catalog.files) {
    files[path.str()] = file_entry_to_json(entry);
  }
  json symlinks = json::array();
  for (const auto& link : catalog.symlinks) {
    symlinks.push_back(json{{"path", link.path.str()},
                            {"variant", link.variant_name},
                            {"default_target", link.default_target.str()}});
  }
  json acls = json::object();
  for (const auto& [tag, group] : catalog.acls) {
    json members = json::array();
    for (const auto& member : group.members) members.push_back(member.dn);
    acls[tag] = json{{"members", std::move(members)}};
  }
  json j{{"revision", catalog.revision},
         {"generated_at", catalog.generated_at},
         {"files", std::move(files)},
         {"symlinks", std::move(symlinks)},
         {"acls", std::move(acls)}};
  return j.dump();
}

Expected<Catalog, std::string> catalog_from_json(std::string_view bytes) {
  json j = json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return std::string("catalog is not valid JSON");
  if (!j.is_object()) return std::string("catalog must be a JSON object");
  for (const char* key : {"revision", "generated_at", "files", "symlinks", "acls"}) {
    if (!j.contains(key)) return std::string("catalog missing '") + key + "'";
  }
  Catalog catalog;
  if (!j["revision"].is_number_unsigned()) {
    return std::string("revision must be a non-negative integer");
  }
  catalog.revision = j["revision"].get<std::uint64_t>();
  if (!j["generated_at"].is_number_integer()) {
    return std::string("generated_at must be an integer");
  }
  catalog.generated_at = j["generated_at"].get<std::int64_t>();
  if (!j["files"].is_object()) return std::string("files must be an object");
  for (const auto& [raw_path, entry_json] : j["files"].items()) {
    LogicalPath path = LogicalPath::normalize(raw_path);
    auto entry = file_entry_from_json(entry_json, path);
    if (!entry) return std::string("file ") + raw_path + ": " + entry.error();
    catalog.files.emplace(path, std::move(*entry));
  }
  if (!j["symlinks"].is_array()) return std::string("symlinks must be an array");
  for (const auto& lj : j["symlinks"]) {
    if (!lj.is_object() || !lj.contains("path") || !lj.contains("variant") ||
        !lj.contains("default_target")) {
      return std::string("symlink entry missing path/variant/default_target");
    }
    VariantSymlink link;
    link.path = LogicalPath::normalize(lj["path"].get<std::string>());
    link.variant_name = lj["variant"].get<std::string>();
    link.default_target = LogicalPath::normalize(lj["default_target"].get<std::string>());
    catalog.symlinks.push_back(std::move(link));
  }
  if (!j["acls"].is_object()) return std::string("acls must be an object");
  for (const auto& [tag, gj] : j["acls"].items()) {
    if (!gj.is_object() || !gj.contains("members") || !gj["members"].is_array()) {
      return std::string("acl group '") + tag + "' missing members array";
    }
    AclGroup group;
    group.tag = tag;
    for (const auto& dn : gj["members"]) group.members.insert(Principal{dn.get<std::string>()});
    catalog.acls.emplace(tag, std::move(group));
  }
  auto problems = validate_catalog(catalog);
  if (!problems.empty()) {
    std::string msg = "catalog invariants violated: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i > 0) msg += "; ";
      msg += problems[i];
    }
    return msg;
  }
  return catalog;
}

json node_info_to_json(const NodeInfo& info) {
  return json{{"node_id", info.node_id},
              {"role", node_role_name(info.role)},
              {"endpoint", info.endpoint},
              {"geo", json::array({info.geo.latitude, info.geo.longitude})}};
}

Expected<NodeInfo, std::string> node_info_from_json(const json& j) {
  if (!j.is_object()) return std::string("node info must be an object");
  for (const char* key : {"node_id", "role", "endpoint", "geo"}) {
    if (!j.contains(key)) return std::string("node info missing '") + key + "'";
  }
  NodeInfo info;
  info.node_id = j["node_id"].get<std::string>();
  auto role = node_role_from_name(j["role"].get<std::string>());
  if (!role) return std::string("unknown node role '") + j["role"].get<std::string>() + "'";
  info.role = *role;
  info.endpoint = j["endpoint"].get<std::string>();
  if (!j["geo"].is_array() || j["geo"].size() != 2) {
    return std::string("geo must be [latitude, longitude]");
  }
  info.geo.latitude = j["geo"][0].get<double>();
  info.geo.longitude = j["geo"][1].get<double>();
  if (info.geo.latitude < -90.0 || info.geo.latitude > 90.0) {
    return std::string("geo latitude out of range [-90, 90]");
  }
  if (info.geo.longitude < -180.0 || info.geo.longitude > 180.0) {
    return std::string("geo longitude out of range [-180, 180]");
  }
  return info;
}

}  // namespace fed::core
