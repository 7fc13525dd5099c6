#include <iostream>
#include <vector>

#include "serene/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return serene::cli::run(args, std::cout, std::cerr);
}
