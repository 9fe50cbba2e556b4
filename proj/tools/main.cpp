#include <iostream>
#include <string>
#include <vector>

#include "structctl/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return structctl::run_cli(args, std::cout, std::cerr);
}
