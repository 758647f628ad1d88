#include <iostream>
#include <string>
#include <vector>

#include "pstnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pstnet::cli::run(args, std::cout, std::cerr);
}
