#include <iostream>

#include "kickspec/commands.hpp"

int main(int argc, char** argv) { return kickspec::cli::run_cli(argc, argv, std::cout, std::cerr); }
