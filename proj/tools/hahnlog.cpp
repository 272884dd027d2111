#include "hahnlog/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hahnlog::run_cli(argc, argv, std::cout, std::cerr); }
