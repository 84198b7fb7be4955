#include <iostream>

#include "vdi/cli.hpp"

int main(int argc, char** argv) { return vdi::cli::run(argc, argv, std::cout, std::cerr); }
