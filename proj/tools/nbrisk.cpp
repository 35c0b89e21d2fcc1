#include <iostream>
#include <string>
#include <vector>

#include "nbrisk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nbrisk::run_cli(args, std::cout, std::cerr);
}
