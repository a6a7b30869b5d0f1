#include <iostream>

#include "splice/cli.hpp"

int main(int argc, char** argv) { return splice::cli::run(argc, argv, std::cout, std::cerr); }
