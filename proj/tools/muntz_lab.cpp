#include "muntz_lab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return muntz::cli::run(argc, argv, std::cout, std::cerr); }
