#pragma once

// Command-line front end: `compute`, `sweep` and `validate` subcommands.
// Exit codes: 0 success, 1 validation failure, 2 usage or parameter error,
// 3 numerical failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace orthocomplex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kCsvHeader =
    "family,n,alpha,beta,variance,fisher,shannon_entropy,w2,n1,c_cr,c_fs,c_lmc,method_flags";

}  // namespace orthocomplex::cli
