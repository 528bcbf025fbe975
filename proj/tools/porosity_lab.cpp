#include <iostream>

#include "porosity/cli.hpp"

int main(int argc, char** argv) { return porosity::cli::main_entry(argc, argv, std::cout, std::cerr); }
