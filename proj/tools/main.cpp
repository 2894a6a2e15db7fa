#include <iostream>

#include "stehfest/cli.hpp"

int main(int argc, char** argv) { return stehfest::run_cli(argc, argv, std::cout, std::cerr); }
