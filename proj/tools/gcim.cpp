#include <iostream>

#include "gcim/cli.hpp"

int main(int argc, char** argv) { return gcim::run_cli(argc, argv, std::cout, std::cerr); }
