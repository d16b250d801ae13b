#include <iostream>

#include "cfr/cli_run.hpp"

int main(int argc, char** argv) {
    return cfr::cli::run(argc, argv, std::cout, std::cerr);
}
