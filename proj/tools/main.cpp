#include <iostream>

#include "nonlocal/cli/commands.hpp"

int main(int argc, char** argv) { return nonlocal::cli::run_cli(argc, argv, std::cout, std::cerr); }
