#include <iostream>
#include <string>
#include <vector>

#include "sps/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = sps::run_cli(args);
    std::cout << result.output;
    return result.exit_code;
}
