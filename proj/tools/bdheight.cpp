#include <iostream>
#include <string>
#include <vector>

#include "bdh/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bdh::cli::run(args, std::cout, std::cerr);
}
