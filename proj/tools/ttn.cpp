#include <iostream>
#include <string>
#include <vector>

#include "ttn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ttn::cli::execute(args, std::cout, std::cerr);
}
