#include <iostream>
#include <string>
#include <vector>

#include "amoeba/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return amoeba::run_cli(args, std::cout, std::cerr);
}
