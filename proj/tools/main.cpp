#include <iostream>

#include "ncsc/harness/cli.hpp"

int main(int argc, char** argv) {
  return ncsc::harness::cli_main(argc, argv, std::cout, std::cerr);
}
