#include <iostream>

#include "abduce/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return abduce::run_cli(args, std::cout, std::cerr);
}
