#include <iostream>
#include <string>
#include <vector>

#include "fgsg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fgsg::run_cli(args, std::cout, std::cerr);
}
