#include <iostream>
#include <string>
#include <vector>

#include "defectlaw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return defectlaw::run_cli(args, std::cout, std::cerr);
}
