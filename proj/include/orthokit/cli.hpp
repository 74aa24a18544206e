#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 numerical failure. Failures print one line "error: <kind>: <message>".

#include <iosfwd>
#include <span>
#include <string>

namespace orthokit::cli {

// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace orthokit::cli
