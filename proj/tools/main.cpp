#include <iostream>

#include "metasearch/cli.hpp"

int main(int argc, char** argv) {
    return metasearch::run_cli(argc, argv, std::cout, std::cerr);
}
