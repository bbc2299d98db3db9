#include <iostream>
#include <vector>

#include "digitop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return digitop::cli::run(std::move(args), std::cout, std::cerr);
}
