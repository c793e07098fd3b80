#include <iostream>
#include <string>
#include <vector>

#include "jetlift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jetlift::run_command(args, std::cout, std::cerr);
}
