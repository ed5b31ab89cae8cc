#include <iostream>

#include "moobench/harness/cli.hpp"

int main(int argc, char** argv) {
  return moobench::harness::run_cli(argc, argv, std::cout, std::cerr);
}
