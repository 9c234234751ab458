#include <iostream>

#include "qwp/cli.hpp"

int main(int argc, char** argv) { return qwp::run_cli(argc, argv, std::cout, std::cerr); }
