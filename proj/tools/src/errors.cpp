#include "ddns_cli/errors.hpp"

namespace ddns::cli {

const char* exit_class(int code) {
    switch (code) {
        case kOk: return "ok";
        case kUsage: return "usage";
        case kConfig: return "config";
        case kInvalidInput: return "invalid_input";
        case kRejected: return "rejected";
        case kNotFound: return "not_found";
        case kNetwork: return "network";
        case kLocked: return "locked";
        case kIntegrity: return "integrity";
        case kDnsFailure: return "dns_failure";
        default: return "internal";
    }
}

}  // namespace ddns::cli
