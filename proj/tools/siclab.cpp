#include <iostream>

#include "siclab/cli.hpp"

int main(int argc, char** argv) {
    return siclab::run_cli(argc, argv, std::cout, std::cerr);
}
