#include <iostream>
#include <string>
#include <vector>

#include "polyreal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polyreal::cli::run(args, std::cout, std::cerr);
}
