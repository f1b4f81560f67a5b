#pragma once

#include <string_view>

namespace aapam::log {

enum class Level : int {
  kQuiet = 0,
  kError = 1,
  kWarn = 2,
  kInfo = 3,
  kDebug = 4,
};

// Current verbosity. Initialized once from the AAPAM_LOG environment variable
// (quiet|error|warn|info|debug); defaults to warn.
Level level();

void set_level(Level level);

// All output goes to stderr. Artifacts never pass through here.
void error(std::string_view msg);
void warn(std::string_view msg);
void info(std::string_view msg);
void debug(std::string_view msg);

}  // namespace aapam::log
