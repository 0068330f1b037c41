#include <iostream>

#include "pennant/cli.hpp"

int main(int argc, char** argv) { return pennant::cli_main(argc, argv, std::cout, std::cerr); }
