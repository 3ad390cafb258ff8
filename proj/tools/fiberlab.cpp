#include <iostream>
#include <string>
#include <vector>

#include "fiberlab/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fiberlab::run_cli(args, std::cout, std::cerr);
}
