#include "floerforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return floerforge::cli::run(argc, argv, std::cout, std::cerr); }
