#include <iostream>

#include "rlnc_das/cli.hpp"

int main(int argc, char** argv) { return rlnc_das::cli::run_cli(argc, argv, std::cout, std::cerr); }
