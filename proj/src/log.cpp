#include "ragsearch/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace ragsearch::log {

namespace {

Level parse_env() {
    const char* env = std::getenv("RAGSEARCH_LOG");
    if (env == nullptr) return Level::warn;
    std::string v(env);
    if (v == "error") return Level::error;
    if (v == "warn") return Level::warn;
    if (v == "info") return Level::info;
    if (v == "debug") return Level::debug;
    return Level::warn;
}

const char* level_name(Level level) {
    switch (level) {
        case Level::error: return "error";
        case Level::warn: return "warn";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

std::mutex g_mutex;

}  // namespace

Level threshold() {
    static const Level t = parse_env();
    return t;
}

void write(Level level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << "[" << level_name(level) << "] " << msg << "\n";
}

}  // namespace ragsearch::log
