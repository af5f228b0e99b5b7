#include <iostream>

#include "dercomb/cli.hpp"

int main(int argc, char** argv) { return dercomb::cli::run(argc, argv, std::cout, std::cerr); }
