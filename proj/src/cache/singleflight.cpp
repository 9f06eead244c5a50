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

#include "fed/cache/singleflight.hpp"

namespace fed::cache {

SingleFlight::Ticket SingleFlight::join(const core::Digest& digest) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = inflight_.find(digest);
  if (it != inflight_.end()) {
    return Ticket(this, digest, it->second, /*leader=*/false);
  }
  auto entry = std::make_shared<Ticket::Entry>();
  inflight_.emplace(digest, entry);
  return Ticket(this, digest, std::move(entry), /*leader=*/true);
}

void SingleFlight::Ticket::complete(Outcome outcome) {
  {
    std::lock_guard<std::mutex> owner_lock(owner_->mutex_);
    owner_->inflight_.erase(digest_);
  }
  {
    std::lock_guard<std::mutex> lock(entry_->m);
    entry_->outcome = std::move(outcome);
    entry_->done = true;
  }
  entry_->cv.notify_all();
}

SingleFlight::Outcome SingleFlight::Ticket::wait() {
  std::unique_lock<std::mutex> lock(entry_->m);
  entry_->cv.wait(lock, [this] { return entry_->done; });
  return entry_->outcome;
}

}  // namespace fed::cache
