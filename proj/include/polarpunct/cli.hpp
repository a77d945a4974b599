#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace polarpunct {

/// Entry point of the polarpunct tool. args excludes the program name.
/// Returns 0 on success, 1 on runtime failure, 2 on usage error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace polarpunct
