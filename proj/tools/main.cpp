#include <iostream>

#include "cocycle_lab/cli.hpp"

int main(int argc, char** argv) {
    const auto result = cocycle_lab::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << result.payload;
    std::cerr << result.log;
    return result.exit_code;
}
