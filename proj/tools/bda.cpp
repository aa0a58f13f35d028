#include <iostream>

#include "bda/cli.hpp"

int main(int argc, char** argv) { return bda::cli::run(argc, argv, std::cout, std::cerr); }
