#include <iostream>
#include <string>
#include <vector>

#include "reflekt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return reflekt::run_cli(args, std::cin, std::cout, std::cerr);
}
