#ifndef SPS_CLI_HPP
#define SPS_CLI_HPP

#include <string>
#include <vector>

namespace sps {

struct CliResult {
    int exit_code = 0;   // 0 positive/valid, 1 negative/invalid, 2 usage or parse error
    std::string output;  // report destined for stdout
};

/// Runs one subcommand (solve-rspsi, solve-saddp, validate-decomp,
/// breakability, gen, oracle) against files; never throws.
CliResult run_cli(const std::vector<std::string>& args);

} // namespace sps

#endif
