#include "fraclap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fraclap::cli::main_entry(argc, argv, std::cout, std::cerr); }
