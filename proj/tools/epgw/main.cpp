#include <iostream>
#include <string>
#include <vector>

#include "epgw/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return epgw::cli::run(args, std::cout, std::cerr);
}
