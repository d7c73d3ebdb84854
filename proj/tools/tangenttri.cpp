#include <iostream>

#include "tangenttri/cli.hpp"

int main(int argc, char** argv) { return tangenttri::cli::run(argc, argv, std::cout, std::cerr); }
