#include <iostream>

#include "freeflow/cli.hpp"

int main(int argc, char** argv) { return freeflow::run(argc, argv, std::cout, std::cerr); }
