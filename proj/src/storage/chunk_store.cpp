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

#include "fed/storage/chunk_store.hpp"

#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <system_error>

namespace fed::storage {

namespace fs = std::filesystem;
using core::Digest;

Expected<Ok, std::string> ChunkStore::init() {
  std::error_code ec;
  fs::create_directories(root_ / "data", ec);
  if (ec) return "create " + (root_ / "data").string() + ": " + ec.message();
  fs::create_directories(root_ / "tmp", ec);
  if (ec) return "create " + (root_ / "tmp").string() + ": " + ec.message();
  return Ok{};
}

fs::path ChunkStore::path_of(const Digest& digest) const {
  std::string hex = core::to_hex(digest);
  return root_ / "data" / hex.substr(0, 2) / hex;
}

bool ChunkStore::has(const Digest& digest) const {
  std::error_code ec;
  return fs::is_regular_file(path_of(digest), ec);
}

std::optional<std::uint64_t> ChunkStore::size_of(const Digest& digest) const {
  std::error_code ec;
  auto size = fs::file_size(path_of(digest), ec);
  if (ec) return std::nullopt;
  return size;
}

Expected<std::string, std::string> ChunkStore::read(const Digest& digest,
                                                    std::uint64_t offset,
                                                    std::uint64_t length) const {
  fs::path path = path_of(digest);
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) {
    return "open " + path.string() + ": " + std::strerror(errno);
  }
  std::string out;
  if (std::fseek(f, static_cast<long>(offset), SEEK_SET) != 0) {
    std::fclose(f);
    return "seek " + path.string() + ": " + std::strerror(errno);
  }
  out.resize(length);
  std::size_t got = std::fread(out.data(), 1, length, f);
  std::fclose(f);
  if (got != length) {
    return "chunk " + core::to_hex(digest) + " shorter than requested range";
  }
  return out;
}

Expected<std::string, std::string> ChunkStore::read_all(const Digest& digest) const {
  auto size = size_of(digest);
  if (!size) return "chunk " + core::to_hex(digest) + " not in store";
  return read(digest, 0, *size);
}

Expected<bool, std::string> ChunkStore::write(const Digest& digest,
                                              std::string_view bytes) {
  if (has(digest)) return false;

  fs::path final_path = path_of(digest);
  std::error_code ec;
  fs::create_directories(final_path.parent_path(), ec);
  if (ec) return "create " + final_path.parent_path().string() + ": " + ec.message();

  fs::path staged = root_ / "tmp" /
                    (core::to_hex(digest) + "." + std::to_string(::getpid()) + "." +
                     std::to_string(stage_counter_++));
  std::FILE* f = std::fopen(staged.c_str(), "wb");
  if (f == nullptr) return "open " + staged.string() + ": " + std::strerror(errno);
  std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
  if (std::fclose(f) != 0 || written != bytes.size()) {
    fs::remove(staged, ec);
    return "write " + staged.string() + " failed";
  }
  fs::rename(staged, final_path, ec);
  if (ec) {
    fs::remove(staged, ec);
    return "rename into " + final_path.string() + ": " + ec.message();
  }
  return true;
}

Expected<Ok, std::string> ChunkStore::remove(const Digest& digest) {
  std::error_code ec;
  fs::remove(path_of(digest), ec);
  if (ec) return "remove " + path_of(digest).string() + ": " + ec.message();
  return Ok{};
}

std::vector<ChunkStore::ScanEntry> ChunkStore::scan() const {
  std::vector<ScanEntry> entries;
  std::error_code ec;
  fs::path data = root_ / "data";
  if (!fs::is_directory(data, ec)) return entries;
  for (const auto& dir : fs::directory_iterator(data, ec)) {
    if (!dir.is_directory()) continue;
    for (const auto& file : fs::directory_iterator(dir.path(), ec)) {
      if (!file.is_regular_file()) continue;
      auto digest = core::digest_from_hex(file.path().filename().string());
      if (!digest) continue;
      struct stat st{};
      if (::stat(file.path().c_str(), &st) != 0) continue;
      ScanEntry entry;
      entry.digest = *digest;
      entry.size = static_cast<std::uint64_t>(st.st_size);
      entry.mtime = static_cast<double>(st.st_mtim.tv_sec) +
                    static_cast<double>(st.st_mtim.tv_nsec) * 1e-9;
      entries.push_back(entry);
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const ScanEntry& a, const ScanEntry& b) { return a.digest < b.digest; });
  return entries;
}

}  // namespace fed::storage
