#include <iostream>
#include <string>
#include <vector>

#include "polarpunct/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polarpunct::run_cli(args, std::cout, std::cerr);
}
