#include <iostream>
#include <string>
#include <vector>

#include "mdsforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mdsforge::run_cli(args, std::cout, std::cerr);
}
