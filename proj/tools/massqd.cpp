#include <iostream>

#include "massqd/cli.hpp"

int main(int argc, char** argv) { return massqd::run_cli(argc, argv, std::cerr); }
