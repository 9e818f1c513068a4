#include <iostream>

#include "fockzero/cli.hpp"

int main(int argc, char** argv) { return fockzero::run_cli(argc, argv, std::cout, std::cerr); }
