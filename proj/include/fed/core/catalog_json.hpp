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

#include <string>
#include <string_view>

#include <json.hpp>

#include "fed/core/model.hpp"
#include "fed/util/expected.hpp"

namespace fed::core {

/// Canonical catalog bytes: sorted keys, no insignificant whitespace, sorted
/// member lists. Identical catalogs serialize to identical bytes.
std::string catalog_to_json(const Catalog& catalog);

/// Parses and validates catalog JSON (structure plus catalog invariants).
Expected<Catalog, std::string> catalog_from_json(std::string_view bytes);

nlohmann::json file_entry_to_json(const FileEntry& entry);
Expected<FileEntry, std::string> file_entry_from_json(const nlohmann::json& j,
                                                      const LogicalPath& path);

nlohmann::json node_info_to_json(const NodeInfo& info);
Expected<NodeInfo, std::string> node_info_from_json(const nlohmann::json& j);

}  // namespace fed::core
