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

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>

#include <json.hpp>

#include "fed/core/model.hpp"

namespace fed::origin {

/// Admission control for data transfers: a per-principal concurrency limit
/// plus a memory accounting model (bytes = active connections x
/// per-connection footprint). Two memory modes:
///
///   refuse - admission that would exceed the cap is rejected (the
///            lightweight threaded-server model),
///   crash  - admission always succeeds, but crossing the cap kills every
///            active transfer (the heavyweight process-per-connection model).
///
/// Check-and-increment is atomic; the per-principal limit and (in refuse
/// mode) the cap hold at every observable point.
class TransferLedger {
 public:
  enum class Mode { refuse, crash };

  struct Config {
    int limit_per_principal = 10;
    std::uint64_t per_connection_memory = 64 * 1024;
    std::uint64_t memory_cap = 64ull * 1024 * 1024 * 1024;
    Mode mode = Mode::refuse;
  };

  enum class Outcome { admitted, refused_principal_limit, refused_memory, crashed };

  /// Transfer slot handle; pass back to release(). Stale handles from before
  /// a crash reset are ignored.
  struct Admission {
    core::Principal principal;
    std::uint64_t generation = 0;
  };

  struct AdmitResult {
    Outcome outcome;
    std::optional<Admission> admission;  // set when a slot was taken
  };

  explicit TransferLedger(Config config) : config_(config) {}

  AdmitResult admit(const core::Principal& principal);
  void release(const Admission& admission);

  /// Clears all active slots (post-crash recovery); bumps the generation so
  /// outstanding releases become no-ops.
  void reset();

  int active_total() const;
  int active_for(const core::Principal& principal) const;
  std::uint64_t ledger_bytes() const;

  int peak_active() const;
  std::uint64_t peak_ledger_bytes() const;
  std::uint64_t refusals_principal() const;
  std::uint64_t refusals_memory() const;
  std::uint64_t crash_count() const;

  const Config& config() const { return config_; }
  nlohmann::json stats_json() const;

 private:
  Config config_;
  mutable std::mutex mutex_;
  std::map<core::Principal, int> active_;
  int total_ = 0;
  std::uint64_t generation_ = 0;
  int peak_active_ = 0;
  std::uint64_t peak_bytes_ = 0;
  std::uint64_t refusals_principal_ = 0;
  std::uint64_t refusals_memory_ = 0;
  std::uint64_t crashes_ = 0;
};

const char* ledger_mode_name(TransferLedger::Mode mode);
std::optional<TransferLedger::Mode> ledger_mode_from_name(std::string_view name);

/// RAII wrapper: releases the admission on destruction. Held via the
/// connection context so the slot spans the connection's lifetime.
class AdmissionGuard {
 public:
  AdmissionGuard(TransferLedger& ledger, TransferLedger::Admission admission)
      : ledger_(ledger), admission_(std::move(admission)) {}
  ~AdmissionGuard() { ledger_.release(admission_); }
  AdmissionGuard(const AdmissionGuard&) = delete;
  AdmissionGuard& operator=(const AdmissionGuard&) = delete;

 private:
  TransferLedger& ledger_;
  TransferLedger::Admission admission_;
};

}  // namespace fed::origin
