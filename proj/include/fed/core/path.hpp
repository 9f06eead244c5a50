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

#include <compare>
#include <string>
#include <string_view>

namespace fed::core {

/// Absolute, normalized, slash-separated namespace path.
///
/// Normalization collapses duplicate slashes, removes "." segments, resolves
/// ".." (clamped at the root), strips trailing slashes, and forces a leading
/// "/". It is idempotent.
class LogicalPath {
 public:
  LogicalPath() : path_("/") {}
  static LogicalPath normalize(std::string_view raw);

  const std::string& str() const { return path_; }
  bool is_root() const { return path_ == "/"; }

  /// Segment-aware prefix test: "/a/b" is under "/a" but not under "/a/bc".
  bool is_under(const LogicalPath& prefix) const;

  /// Path remainder after `prefix`, with leading slash ("" if equal).
  std::string_view remainder(const LogicalPath& prefix) const;

  /// Joins a relative remainder onto this path and re-normalizes.
  LogicalPath join(std::string_view remainder) const;

  auto operator<=>(const LogicalPath&) const = default;

 private:
  explicit LogicalPath(std::string normalized) : path_(std::move(normalized)) {}
  std::string path_;
};

}  // namespace fed::core
