#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace combalg::cli {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

extern const char* const kVersion;

/// Runs one command line (args excludes the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SelfTestCase {
  std::string id;
  std::string description;
  std::function<bool()> check;
};

/// Worked examples replayed by `selftest`.
const std::vector<SelfTestCase>& selftest_cases();

}  // namespace combalg::cli
