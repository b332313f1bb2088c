// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gls {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,      // bad flags, parameters outside a domain
    kExitNumerical = 3,  // quadrature / optimizer failures
};

/// Runs the tool on `args` (program name excluded). The config file named by
/// GLS_TAILBOUND_CONFIG is used when --config is absent.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gls
