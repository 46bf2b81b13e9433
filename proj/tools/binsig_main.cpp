#include <iostream>
#include <string>
#include <vector>

#include "binsig/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return binsig::cli::run(args, std::cout, std::cerr, std::cin);
}
