#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return angint::cli::run(argc, argv, std::cout, std::cerr); }
