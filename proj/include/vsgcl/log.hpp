// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string_view>

namespace vsgcl {

enum class LogLevel : int { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold parsed once from VSG_CL_LOG (error|warn|info|debug, default warn).
inline LogLevel log_threshold() {
  static const LogLevel lvl = [] {
    const char* e = std::getenv("VSG_CL_LOG");
    if (e == nullptr) return LogLevel::warn;
    if (std::strcmp(e, "error") == 0) return LogLevel::error;
    if (std::strcmp(e, "warn") == 0) return LogLevel::warn;
    if (std::strcmp(e, "info") == 0) return LogLevel::info;
    if (std::strcmp(e, "debug") == 0) return LogLevel::debug;
    return LogLevel::warn;
  }();
  return lvl;
}

inline bool log_enabled(LogLevel lvl) {
  return static_cast<int>(lvl) <= static_cast<int>(log_threshold());
}

// All diagnostics go to stderr so stdout stays clean for machine output.
inline void log_line(LogLevel lvl, std::string_view msg) {
  if (!log_enabled(lvl)) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[vsgcl:%s] %.*s\n", names[static_cast<int>(lvl)],
               static_cast<int>(msg.size()), msg.data());
}

inline void log_info(std::string_view msg) { log_line(LogLevel::info, msg); }
inline void log_warn(std::string_view msg) { log_line(LogLevel::warn, msg); }
inline void log_debug(std::string_view msg) { log_line(LogLevel::debug, msg); }

}  // namespace vsgcl
