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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fed::core {

/// SHA-256 digest. Serialized form is always lowercase hex.
using Digest = std::array<std::uint8_t, 32>;

std::string to_hex(const Digest& digest);
std::optional<Digest> digest_from_hex(std::string_view hex);

Digest sha256(std::string_view bytes);
Digest sha256(const void* data, std::size_t len);

/// Incremental SHA-256, for hashing streams without buffering them.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&& other) noexcept;
  Sha256& operator=(Sha256&& other) noexcept;

  void update(std::string_view bytes);
  void update(const void* data, std::size_t len);

  /// Finalizes and returns the digest. The hasher must not be reused.
  Digest finish();

 private:
  void* ctx_;  // EVP_MD_CTX
};

}  // namespace fed::core
