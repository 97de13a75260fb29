#pragma once

#include <string>

namespace relfuse::log {

enum class Level { error = 0, info = 1, debug = 2 };

/// Active verbosity, parsed once from the RELFUSE_LOG environment variable
/// (error|info|debug, default info). All log output goes to stderr.
Level level();

void error(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace relfuse::log
