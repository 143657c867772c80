#include "posthist/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

#include "posthist/text.hpp"

namespace posthist::log {

namespace {

Level from_env() {
  const char* raw = std::getenv("POSTHIST_LOG");
  if (raw == nullptr) return Level::Warn;
  const std::string v = to_lower_ascii(raw);
  if (v == "debug") return Level::Debug;
  if (v == "info") return Level::Info;
  if (v == "error") return Level::Error;
  if (v == "off") return Level::Off;
  return Level::Warn;
}

std::atomic<int>& current() {
  static std::atomic<int> level{static_cast<int>(from_env())};
  return level;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

constexpr const char* kNames[] = {"debug", "info", "warn", "error", "off"};

}  // namespace

Level threshold() { return static_cast<Level>(current().load()); }

void set_threshold(Level level) { current().store(static_cast<int>(level)); }

void write(Level level, std::string_view message) {
  if (static_cast<int>(level) < current().load() || level == Level::Off) return;
  std::lock_guard lock(sink_mutex());
  std::cerr << "[posthist " << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace posthist::log
