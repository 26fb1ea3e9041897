#pragma once

#include <string_view>

namespace ragsearch::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold parsed once from the RAGSEARCH_LOG environment variable
// (error|warn|info|debug); defaults to warn.
Level threshold();

void write(Level level, std::string_view msg);

inline void error(std::string_view msg) { write(Level::error, msg); }
inline void warn(std::string_view msg) { write(Level::warn, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void debug(std::string_view msg) { write(Level::debug, msg); }

}  // namespace ragsearch::log
