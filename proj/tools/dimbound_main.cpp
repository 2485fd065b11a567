#include <iostream>
#include <string>
#include <vector>

#include "dimbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dimbound::cli::run(args, std::cout, std::cerr);
}
