#include "command.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return inertia::cli::main_entry(args, std::cout, std::cerr);
}
