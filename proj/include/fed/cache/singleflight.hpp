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

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "fed/core/digest.hpp"

namespace fed::cache {

/// Coalesces concurrent fetches of the same chunk into one upstream request.
/// The first caller becomes the leader and must call complete(); followers
/// block until then and share the leader's outcome (including the bytes, so
/// an immediate eviction cannot strand them).
class SingleFlight {
 public:
  struct Outcome {
    bool ok = false;
    std::shared_ptr<const std::string> bytes;  // set when ok
    std::string error;
  };

  class Ticket {
   public:
    bool is_leader() const { return leader_; }
    /// Leader only: publish the outcome and wake followers.
    void complete(Outcome outcome);
    /// Follower only: wait for the leader's outcome.
    Outcome wait();

   private:
    friend class SingleFlight;
    struct Entry;
    Ticket(SingleFlight* owner, core::Digest digest, std::shared_ptr<Entry> entry,
           bool leader)
        : owner_(owner), digest_(digest), entry_(std::move(entry)), leader_(leader) {}

    SingleFlight* owner_;
    core::Digest digest_;
    std::shared_ptr<Entry> entry_;
    bool leader_;
  };

  /// Joins (or starts) the in-flight fetch for `digest`.
  Ticket join(const core::Digest& digest);

 private:
  friend class Ticket;
  std::mutex mutex_;
  std::map<core::Digest, std::shared_ptr<Ticket::Entry>> inflight_;
};

struct SingleFlight::Ticket::Entry {
  std::mutex m;
  std::condition_variable cv;
  bool done = false;
  Outcome outcome;
};

}  // namespace fed::cache
