#include "mmrec/log.hpp"

#include <atomic>

namespace mmrec::log {

namespace {
std::atomic<Level> g_min_level{Level::Info};

const char* tag(Level level) {
  switch (level) {
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
  }
  return "?";
}
}  // namespace

void set_min_level(Level level) { g_min_level.store(level); }

void emit(Level level, const std::string& message) {
  if (static_cast<int>(level) < static_cast<int>(g_min_level.load())) return;
  std::fprintf(stderr, "[%s] %s\n", tag(level), message.c_str());
}

}  // namespace mmrec::log
