#include <iostream>

#include "relset/cli.hpp"

int main(int argc, char** argv) { return relset::run_cli(argc, argv, std::cout, std::cerr); }
