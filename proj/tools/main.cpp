#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return k3cusps::cli::run(argc, argv, std::cout, std::cerr); }
