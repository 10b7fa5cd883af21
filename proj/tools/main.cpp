#include <iostream>
#include <string>
#include <vector>

#include "dynbcast/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dynbcast::cli::main(args, std::cout, std::cerr);
}
