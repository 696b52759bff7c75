#include <iostream>

#include "hjchar/cli.hpp"

int main(int argc, char** argv) { return hjchar::cli::run(argc, argv, std::cout, std::cerr); }
