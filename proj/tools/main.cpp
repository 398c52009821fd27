#include "frobfix/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return frobfix::cli::run(argc, argv, std::cout, std::cerr); }
