#include <iostream>

#include "fracrobin/cli/commands.hpp"

int main(int argc, char** argv) { return fracrobin::cli::run_cli(argc, argv, std::cerr); }
