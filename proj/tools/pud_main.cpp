#include <iostream>

#include "pud/cli.hpp"

int main(int argc, char** argv) {
    return pud::run_cli(argc, argv, std::cout, std::cerr);
}
