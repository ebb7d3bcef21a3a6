#include <iostream>

#include "rismux/cli.hpp"

int main(int argc, char** argv) { return rismux::run_cli(argc, argv, std::cout, std::cerr); }
