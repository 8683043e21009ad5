#include <iostream>
#include <string>
#include <vector>

#include "perfclose/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perfclose::run_cli(args, std::cout, std::cerr);
}
