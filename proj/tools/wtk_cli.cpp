#include <iostream>
#include <string>
#include <vector>

#include "wtk/reports/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wtk::run_command(args, std::cout, std::cerr);
}
