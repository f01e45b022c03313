#include <iostream>
#include <string>
#include <vector>

#include "covert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return covert::cli::run(args, std::cout, std::cerr);
}
