#pragma once

#include <stdexcept>
#include <string>

namespace ddns::cli {

// Process exit codes. Stable: scripts depend on them (docs/cli.md).
enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kConfig = 3,
    kInvalidInput = 4,
    kRejected = 5,
    kNotFound = 6,
    kNetwork = 7,
    kLocked = 8,
    kIntegrity = 9,
    kDnsFailure = 10,
};

const char* exit_class(int code);

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

}  // namespace ddns::cli
