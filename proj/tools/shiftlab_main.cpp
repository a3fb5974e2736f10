#include <iostream>

#include "shiftlab/cli/commands.hpp"

int main(int argc, char** argv) { return shiftlab::cli::run(argc, argv, std::cout, std::cerr); }
