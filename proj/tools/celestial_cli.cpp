#include <iostream>
#include <string>
#include <vector>

#include "celestial/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return celestial::run_cli(args, std::cout, std::cerr);
}
