#include <iostream>

#include "olx/cli.hpp"

int main(int argc, char** argv) { return olx::cli::run(argc, argv, std::cout, std::cerr); }
