#include "aapam/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace aapam::log {
namespace {

Level parse_env() {
  const char* env = std::getenv("AAPAM_LOG");
  if (env == nullptr) return Level::kWarn;
  const std::string value(env);
  if (value == "quiet") return Level::kQuiet;
  if (value == "error") return Level::kError;
  if (value == "warn") return Level::kWarn;
  if (value == "info") return Level::kInfo;
  if (value == "debug") return Level::kDebug;
  return Level::kWarn;
}

Level& current() {
  static Level level = parse_env();
  return level;
}

void emit(const char* tag, std::string_view msg) {
  std::fprintf(stderr, "aapam: %s: %.*s\n", tag, static_cast<int>(msg.size()),
               msg.data());
}

}  // namespace

Level level() { return current(); }

void set_level(Level level) { current() = level; }

void error(std::string_view msg) {
  if (current() >= Level::kError) emit("error", msg);
}

void warn(std::string_view msg) {
  if (current() >= Level::kWarn) emit("warn", msg);
}

void info(std::string_view msg) {
  if (current() >= Level::kInfo) emit("info", msg);
}

void debug(std::string_view msg) {
  if (current() >= Level::kDebug) emit("debug", msg);
}

}  // namespace aapam::log
