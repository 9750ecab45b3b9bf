#include "lozi/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lozi::cli::run(argc, argv, std::cout, std::cerr); }
