#include <iostream>

#include "asdet/cli.hpp"

int main(int argc, char** argv) { return asdet::cli::run(argc, argv, std::cout, std::cerr); }
