#include <iostream>

#include "expgame/cli.hpp"

int main(int argc, char** argv) { return expgame::cli_main(argc, argv, std::cout, std::cerr); }
