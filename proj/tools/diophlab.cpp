#include <iostream>

#include "diophlab/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diophlab::cli::run(args, std::cout, std::cerr);
}
