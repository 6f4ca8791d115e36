#ifndef DCOV_CLI_RUN_HPP
#define DCOV_CLI_RUN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/csv.hpp"

namespace dcov::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the dcov tool. args excludes the program name. Results go
/// to out (or the --out path); errors produce one line on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolves a column selector such as "a,b", "1-3,5" (1-based) or a mix.
/// Names take precedence over numbers.
std::vector<std::size_t> select_columns(const std::string& selector,
                                        const std::vector<std::string>& names);

}  // namespace dcov::cli

#endif  // DCOV_CLI_RUN_HPP
