#include <iostream>

#include "minleg/cli.hpp"

int main(int argc, char** argv) { return minleg::run_cli(argc, argv, std::cout, std::cerr); }
