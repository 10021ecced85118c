#include <iostream>

#include "totp/cli.hpp"

int main(int argc, char** argv) { return totp::cli::run(argc, argv, std::cout, std::cerr); }
