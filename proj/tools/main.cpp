#include <iostream>
#include <string>
#include <vector>

#include "fairc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fairc::run_command(args, std::cout, std::cerr);
}
