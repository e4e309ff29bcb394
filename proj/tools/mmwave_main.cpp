#include <iostream>
#include <string>
#include <vector>

#include "mmw/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mmw::cli::run_cli(args, std::cout, std::cerr);
}
