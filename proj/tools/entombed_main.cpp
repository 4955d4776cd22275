#include <iostream>
#include <string>
#include <vector>

#include "entombed/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return entombed::cli::run(args, std::cout, std::cerr);
}
