#include <iostream>
#include <vector>

#include "plad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return plad::cli::run(args, std::cout, std::cerr);
}
