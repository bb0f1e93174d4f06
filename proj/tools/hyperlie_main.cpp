#include <iostream>

#include "hyperlie/cli.hpp"

int main(int argc, char** argv) { return hyperlie::cli::run(argc, argv, std::cout, std::cerr); }
