#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpdkit {

/// CLI entry point: verbs check | product | quotient | equiv | fell |
/// algebra | dr | example. Exit codes: 0 all checks pass, 1 check failures,
/// 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gpdkit
