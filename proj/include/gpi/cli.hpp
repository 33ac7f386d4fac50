#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpi {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kCertificateSchema = 1;
// Column order: permutations in lexicographic order. Rows: basis tuples in
// lexicographic order. Product subsets: by size, then lexicographic.
inline constexpr const char* kEnumerationOrder = "perm-lex/tuple-lex/subset-size-lex/v1";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInconsistent = 2,
  kExitGuard = 3,
  kExitUnsupported = 4,
};

// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace gpi
