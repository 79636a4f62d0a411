#include <iostream>
#include <string>
#include <vector>

#include "metnet/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return metnet::run_cli(args, std::cout, std::cerr);
}
