#include <iostream>

#include "ginv/cli.hpp"

int main(int argc, char** argv) { return ginv::run_cli(argc, argv, std::cout, std::cerr); }
