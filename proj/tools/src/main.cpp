#include <iostream>

#include "octoverify_cli/cli.hpp"

int main(int argc, char** argv) { return octoverify::cli::main(argc, argv, std::cout, std::cerr); }
