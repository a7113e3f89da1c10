#include <iostream>
#include <string>
#include <vector>

#include "ptd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return ptd::cli::run(args, std::cout, std::cerr);
}
