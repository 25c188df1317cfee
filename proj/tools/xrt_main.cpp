#include <iostream>

#include "xrt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xrt::cli::run(args, std::cout, std::cerr);
}
