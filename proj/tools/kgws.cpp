#include <iostream>

#include "kgws/cli.hpp"

int main(int argc, char** argv) { return kgws::run_cli(argc, argv, std::cout, std::cerr); }
