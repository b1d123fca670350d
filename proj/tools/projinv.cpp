#include <iostream>

#include "projinv/cli.hpp"

int main(int argc, char** argv) { return projinv::run_cli(argc, argv, std::cout, std::cerr); }
