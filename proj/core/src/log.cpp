#include "relfuse/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace relfuse::log {

static Level parse_level() {
    const char* env = std::getenv("RELFUSE_LOG");
    if (env == nullptr) return Level::info;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::info;
}

Level level() {
    static const Level lvl = parse_level();
    return lvl;
}

static void emit(const char* tag, const std::string& msg) {
    std::fprintf(stderr, "[relfuse:%s] %s\n", tag, msg.c_str());
}

void error(const std::string& msg) {
    emit("error", msg);
}

void info(const std::string& msg) {
    if (level() >= Level::info) emit("info", msg);
}

void debug(const std::string& msg) {
    if (level() >= Level::debug) emit("debug", msg);
}

}  // namespace relfuse::log
