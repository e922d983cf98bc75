#include <iostream>
#include <string>
#include <vector>

#include "qdiscord/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qdiscord::parse_and_dispatch(args, std::cout, std::cerr);
}
