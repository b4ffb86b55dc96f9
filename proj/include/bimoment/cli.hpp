#ifndef BIMOMENT_CLI_HPP
#define BIMOMENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bimoment::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, unreadable or inconsistent input
inline constexpr int kExitViolation = 2;  // a checked property failed (validate, sweep, moments)

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bimoment::cli

#endif  // BIMOMENT_CLI_HPP
