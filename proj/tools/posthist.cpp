#include <iostream>

#include "posthist/cli.hpp"

int main(int argc, char** argv) { return posthist::cli::run(argc, argv, std::cout, std::cerr); }
