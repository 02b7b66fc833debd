#include <iostream>

#include "bornforge/cli.hpp"

int main(int argc, char** argv) { return bornforge::run_cli(argc, argv, std::cout, std::cerr); }
