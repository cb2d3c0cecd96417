#include <iostream>

#include "z2chain/cli.hpp"

int main(int argc, char** argv) {
  return z2chain::cli_main(argc, argv, std::cout, std::cerr);
}
