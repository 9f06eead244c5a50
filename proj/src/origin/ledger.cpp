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

#include "fed/origin/ledger.hpp"

namespace fed::origin {

TransferLedger::AdmitResult TransferLedger::admit(const core::Principal& principal) {
  std::lock_guard<std::mutex> lock(mutex_);

  int& active = active_[principal];
  if (active >= config_.limit_per_principal) {
    ++refusals_principal_;
    return {Outcome::refused_principal_limit, std::nullopt};
  }

  std::uint64_t bytes_after =
      (static_cast<std::uint64_t>(total_) + 1) * config_.per_connection_memory;
  if (config_.mode == Mode::refuse && bytes_after > config_.memory_cap) {
    ++refusals_memory_;
    return {Outcome::refused_memory, std::nullopt};
  }

  ++active;
  ++total_;
  peak_active_ = std::max(peak_active_, total_);
  peak_bytes_ = std::max(peak_bytes_, bytes_after);

  Admission admission{principal, generation_};
  if (config_.mode == Mode::crash && bytes_after > config_.memory_cap) {
    ++crashes_;
    return {Outcome::crashed, admission};
  }
  return {Outcome::admitted, admission};
}

void TransferLedger::release(const Admission& admission) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (admission.generation != generation_) return;  // pre-crash slot, already gone
  auto it = active_.find(admission.principal);
  if (it == active_.end() || it->second <= 0) return;
  if (--it->second == 0) active_.erase(it);
  --total_;
}

void TransferLedger::reset() {
  std::lock_guard<std::mutex> lock(mutex_);
  active_.clear();
  total_ = 0;
  ++generation_;
}

int TransferLedger::active_total() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return total_;
}

int TransferLedger::active_for(const core::Principal& principal) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = active_.find(principal);
  return it == active_.end() ? 0 : it->second;
}

std::uint64_t TransferLedger::ledger_bytes() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return static_cast<std::uint64_t>(total_) * config_.per_connection_memory;
}

int TransferLedger::peak_active() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return peak_active_;
}

std::uint64_t TransferLedger::peak_ledger_bytes() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return peak_bytes_;
}

std::uint64_t TransferLedger::refusals_principal() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return refusals_principal_;
}

std::uint64_t TransferLedger::refusals_memory() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return refusals_memory_;
}

std::uint64_t TransferLedger::crash_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return crashes_;
}

nlohmann::json TransferLedger::stats_json() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return nlohmann::json{
      {"active_total", total_},
      {"ledger_bytes", static_cast<std::uint64_t>(total_) * config_.per_connection_memory},
      {"peak_active", peak_active_},
      {"peak_ledger_bytes", peak_bytes_},
      {"refusals_principal_limit", refusals_principal_},
      {"refusals_memory", refusals_memory_},
      {"crash_events", crashes_},
      {"limit_per_principal", config_.limit_per_principal},
      {"per_connection_memory", config_.per_connection_memory},
      {"memory_cap", config_.memory_cap},
      {"mode", ledger_mode_name(config_.mode)}};
}

const char* ledger_mode_name(TransferLedger::Mode mode) {
  return mode == TransferLedger::Mode::refuse ? "refuse" : "crash";
}

std::optional<TransferLedger::Mode> ledger_mode_from_name(std::string_view name) {
  if (name == "refuse") return TransferLedger::Mode::refuse;
  if (name == "crash") return TransferLedger::Mode::crash;
  return std::nullopt;
}

}  // namespace fed::origin
