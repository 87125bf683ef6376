#include "calckit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return calckit::run_cli(argc, argv, std::cout, std::cerr); }
