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

#include <cstdarg>

namespace fed {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();

// printf-style, writes "[level] component: message\n" to stderr.
void log(LogLevel level, const char* component, const char* fmt, ...)
    __attribute__((format(printf, 3, 4)));

#define FED_LOG_DEBUG(component, ...) \
  ::fed::log(::fed::LogLevel::debug, component, __VA_ARGS__)
#define FED_LOG_INFO(component, ...) \
  ::fed::log(::fed::LogLevel::info, component, __VA_ARGS__)
#define FED_LOG_WARN(component, ...) \
  ::fed::log(::fed::LogLevel::warn, component, __VA_ARGS__)
#define FED_LOG_ERROR(component, ...) \
  ::fed::log(::fed::LogLevel::error, component, __VA_ARGS__)

}  // namespace fed
