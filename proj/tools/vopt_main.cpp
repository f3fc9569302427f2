#include <iostream>

#include "vopt/cli.hpp"

int main(int argc, char** argv) { return vopt::run_cli(argc, argv, std::cout, std::cerr); }
