#include <iostream>

#include "kerrsync/cli.hpp"

int main(int argc, char** argv) { return kerrsync::cli::run(argc, argv, std::cout, std::cerr); }
