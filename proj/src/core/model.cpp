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

#include "fed/core/model.hpp"

namespace fed::core {

TokenTable::TokenTable(std::map<std::string, std::string> token_to_dn)
    : table_(std::move(token_to_dn)) {}

std::optional<Principal> TokenTable::lookup(std::string_view token) const {
  auto it = table_.find(std::string(token));
  if (it == table_.end() || it->second.empty()) return std::nullopt;
  return Principal{it->second};
}

const char* node_role_name(NodeRole role) {
  switch (role) {
    case NodeRole::origin: return "origin";
    case NodeRole::cache: return "cache";
    case NodeRole::redirector: return "redirector";
  }
  return "?";
}

std::optional<NodeRole> node_role_from_name(std::string_view name) {
  if (name == "origin") return NodeRole::origin;
  if (name == "cache") return NodeRole::cache;
  if (name == "redirector") return NodeRole::redirector;
  return std::nullopt;
}

}  // namespace fed::core
