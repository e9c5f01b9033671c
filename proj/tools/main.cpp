#include "mixedlink/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mixedlink::run_cli(argc, argv, std::cout, std::cerr); }
