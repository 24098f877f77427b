#include <iostream>

#include "genproj/cli.hpp"

int main(int argc, char** argv) { return genproj::run_cli(argc, argv, std::cout, std::cerr); }
