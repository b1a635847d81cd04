#include "scenario.hpp"

#include <iostream>

int main(int argc, char** argv) { return drcomp::cli::run_cli(argc, argv, std::cout, std::cerr); }
