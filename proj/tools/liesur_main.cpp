#include "liesur/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return liesur::cli::run(argc, argv, std::cout, std::cerr); }
