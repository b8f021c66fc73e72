#include <iostream>

#include "lameforge/cli.hpp"

int main(int argc, char** argv) { return lameforge::cli::run_cli(argc, argv, std::cout, std::cerr); }
