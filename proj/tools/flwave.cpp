#include <iostream>

#include "flwave/cli.hpp"

int main(int argc, char** argv) { return flwave::cli_main(argc, argv, std::cout, std::cerr); }
