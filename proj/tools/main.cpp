#include <iostream>
#include <string>
#include <vector>

#include "frontspeed/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frontspeed::main_entry(args, std::cout, std::cerr);
}
