#include <iostream>

#include "kdg/cli.hpp"

int main(int argc, char** argv) { return kdg::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
