#include <iostream>
#include <string>
#include <vector>

#include "dilmax_cli/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dilmax::cli::run(args, std::cout, std::cerr);
}
