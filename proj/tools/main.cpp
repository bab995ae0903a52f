#include "vortsol/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return vortsol::run_cli(argc, argv, std::cout, std::cerr);
}
