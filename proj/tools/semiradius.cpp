#include <iostream>

#include "semiradius/cli.hpp"

int main(int argc, char** argv) { return semiradius::run_cli(argc, argv, std::cout, std::cerr); }
