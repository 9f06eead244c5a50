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

#include "fed/core/path.hpp"

#include <vector>

namespace fed::core {

LogicalPath LogicalPath::normalize(std::string_view raw) {
  std::vector<std::string_view> segments;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && raw[i] == '/') ++i;
    std::size_t start = i;
    while (i < raw.size() && raw[i] != '/') ++i;
    if (i == start) break;
    std::string_view seg = raw.substr(start, i - start);
    if (seg == ".") continue;
    if (seg == "..") {
      if (!segments.empty()) segments.pop_back();
      continue;  // ".." at the root clamps
    }
    segments.push_back(seg);
  }
  std::string out;
  if (segments.empty()) {
    out = "/";
  } else {
    for (const auto& seg : segments) {
      out.push_back('/');
      out.append(seg);
    }
  }
  return LogicalPath(std::move(out));
}

bool LogicalPath::is_under(const LogicalPath& prefix) const {
  if (prefix.is_root()) return true;
  const std::string& p = prefix.path_;
  if (path_.size() < p.size() || path_.compare(0, p.size(), p) != 0) return false;
  return path_.size() == p.size() || path_[p.size()] == '/';
}

std::string_view LogicalPath::remainder(const LogicalPath& prefix) const {
  if (!is_under(prefix)) return {};
  if (prefix.is_root()) return std::string_view(path_);
  return std::string_view(path_).substr(prefix.path_.size());
}

LogicalPath LogicalPath::join(std::string_view remainder) const {
  std::string combined = path_;
  combined.push_back('/');
  combined.append(remainder);
  return normalize(combined);
}

}  // namespace fed::core
