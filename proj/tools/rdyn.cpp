#include <iostream>

#include "rdyn/cli/commands.hpp"

int main(int argc, char** argv) { return rdyn::cli::run_cli(argc, argv, std::cout, std::cerr); }
