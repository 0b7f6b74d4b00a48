#include <iostream>

#include "mmst/cli.hpp"

int main(int argc, char** argv) { return mmst::run(argc, argv, std::cout, std::cerr); }
