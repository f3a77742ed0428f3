#include "frugal/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>

namespace frugal::log {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

std::optional<Level>& override_level() {
  static std::optional<Level> level;
  return level;
}

Level from_environment() {
  const char* raw = std::getenv("FRUGAL_LOG");
  if (!raw) return Level::Warn;
  const std::string v = raw;
  if (v == "error") return Level::Error;
  if (v == "info") return Level::Info;
  if (v == "debug") return Level::Debug;
  return Level::Warn;
}

const char* label(Level level) {
  switch (level) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level env = from_environment();
  return override_level().value_or(env);
}

void set_threshold(Level level) { override_level() = level; }

void write(Level level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[frugal " << label(level) << "] " << message << '\n';
}

}  // namespace frugal::log
