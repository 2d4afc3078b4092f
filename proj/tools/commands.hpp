#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sftok::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitModuleError = 2;

/// Runs the sftok command line. args excludes the program name. Module
/// errors print "error: <Code>: <detail>" to err and return 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sftok::cli
