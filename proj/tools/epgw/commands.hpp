#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epgw::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 1,  // bad config, arguments, or parameter validation
    kDomainError = 2,  // NoEP / NotAtEP / ZeroCoupling
    kIoError = 3,
};

/// Runs `epgw` with `args` (program name excluded). Human-readable text goes
/// to `out`, diagnostics to `err`, data only to the file named by --output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epgw::cli
