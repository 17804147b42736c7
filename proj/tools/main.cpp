#include <iostream>

#include "combalg/cli.hpp"

int main(int argc, char** argv) { return combalg::cli::run(argc, argv, std::cout, std::cerr); }
