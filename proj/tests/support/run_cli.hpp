#pragma once

// Runs the built CLI binary and captures exit code + stdout. Test-only.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SYZYGY_CLI_PATH
#error "SYZYGY_CLI_PATH must be defined by the build"
#endif

namespace cli {

struct Result {
    int exit_code = -1;
    std::string out;
};

inline Result run_raw(const std::string& cmd) {
    std::array<char, 4096> buf{};
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline Result run(const std::string& args) {
    return run_raw(std::string(SYZYGY_CLI_PATH) + " " + args + " 2>/dev/null");
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string temp_path(const std::string& name) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/" + name;
}

} // namespace cli
