#include <iostream>
#include <string>
#include <vector>

#include "kgbound/cli_io.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return kgb::run_cli(args, std::cout, std::cerr);
}
