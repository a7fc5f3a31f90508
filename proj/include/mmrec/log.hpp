#pragma once

#include <cstdio>
#include <string>

namespace mmrec::log {

enum class Level { Info, Warn, Error };

void set_min_level(Level level);
void emit(Level level, const std::string& message);

inline void info(const std::string& message) { emit(Level::Info, message); }
inline void warn(const std::string& message) { emit(Level::Warn, message); }
inline void error(const std::string& message) { emit(Level::Error, message); }

}  // namespace mmrec::log
