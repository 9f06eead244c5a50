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

#include "fed/cache/index.hpp"

#include <algorithm>
#include <cassert>

namespace fed::cache {

using core::Digest;

void CacheIndex::touch_locked(const Digest& digest, Entry& entry) {
  lru_.erase(entry.lru_pos);
  lru_.push_front(digest);
  entry.lru_pos = lru_.begin();
  entry.last_access_at = clock_->now();
}

CacheIndex::AdmitResult CacheIndex::admit(const Digest& digest, std::uint64_t size) {
  AdmitResult result;
  if (size > capacity_) return result;  // pass-through, never admitted

  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(digest);
  if (it != entries_.end()) {
    touch_locked(digest, it->second);
    result.admitted = true;
    return result;
  }

  while (total_ + size > capacity_) {
    assert(!lru_.empty());
    const Digest victim = lru_.back();
    auto vit = entries_.find(victim);
    total_ -= vit->second.size;
    lru_.pop_back();
    entries_.erase(vit);
    ++evictions_;
    result.evicted.push_back(victim);
  }

  lru_.push_front(digest);
  Entry entry;
  entry.size = size;
  entry.last_access_at = clock_->now();
  entry.lru_pos = lru_.begin();
  entries_.emplace(digest, entry);
  total_ += size;
  result.admitted = true;
  return result;
}

bool CacheIndex::touch(const Digest& digest) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(digest);
  if (it == entries_.end()) return false;
  touch_locked(digest, it->second);
  return true;
}

bool CacheIndex::contains(const Digest& digest) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.count(digest) != 0;
}

void CacheIndex::forget(const Digest& digest) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(digest);
  if (it == entries_.end()) return;
  total_ -= it->second.size;
  lru_.erase(it->second.lru_pos);
  entries_.erase(it);
}

std::uint64_t CacheIndex::total_bytes() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return total_;
}

std::size_t CacheIndex::entry_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

std::uint64_t CacheIndex::evictions() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return evictions_;
}

nlohmann::json CacheIndex::to_json() const {
  std::lock_guard<std::mutex> lock(mutex_);
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [digest, entry] : entries_) {
    j[core::to_hex(digest)] = {{"size", entry.size},
                               {"last_access_at", entry.last_access_at}};
  }
  return j;
}

void CacheIndex::load(
    const std::vector<std::tuple<Digest, std::uint64_t, double>>& entries) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.clear();
  lru_.clear();
  total_ = 0;

  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
    return std::get<0>(a) < std::get<0>(b);
  });
  // Oldest first; push_front leaves the newest at the front.
  for (const auto& [digest, size, at] : sorted) {
    if (size > capacity_ || entries_.count(digest) != 0) continue;
    lru_.push_front(digest);
    Entry entry;
    entry.size = size;
    entry.last_access_at = at;
    entry.lru_pos = lru_.begin();
    entries_.emplace(digest, entry);
    total_ += size;
  }
  // Capacity may have shrunk since the index was written.
  while (total_ > capacity_ && !lru_.empty()) {
    const Digest victim = lru_.back();
    auto it = entries_.find(victim);
    total_ -= it->second.size;
    lru_.pop_back();
    entries_.erase(it);
    ++evictions_;
  }
}

std::vector<std::pair<Digest, std::uint64_t>> CacheIndex::entries_by_age() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<std::pair<Digest, std::uint64_t>> out;
  for (auto it = lru_.rbegin(); it != lru_.rend(); ++it) {
    out.emplace_back(*it, entries_.at(*it).size);
  }
  return out;
}

}  // namespace fed::cache
