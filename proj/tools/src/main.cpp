#include <iostream>

#include "tazrp/cli.hpp"

int main(int argc, char** argv) { return tazrp::run_cli(argc, argv, std::cout, std::cerr); }
