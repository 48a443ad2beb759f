#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return coxreg::cli::run(argc, argv, std::cout, std::cerr); }
