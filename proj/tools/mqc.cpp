#include <iostream>

#include "mqc/cli.hpp"

int main(int argc, char** argv) { return mqc::cli::run(argc, argv, std::cout, std::cerr); }
