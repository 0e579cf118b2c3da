#include <iostream>
#include <string>
#include <vector>

#include "diagkill/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return diagkill::run_cli(args, std::cout, std::cerr);
}
