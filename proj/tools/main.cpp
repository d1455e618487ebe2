#include <iostream>

#include "aocr/cli.hpp"

int main(int argc, char** argv) { return aocr::run_cli(argc, argv, std::cout, std::cerr); }
