#include <iostream>

#include "shoberry/cli/app.hpp"

int main(int argc, char** argv) { return shoberry::cli::run(argc, argv, std::cout, std::cerr); }
