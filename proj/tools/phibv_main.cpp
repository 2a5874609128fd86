#include <iostream>
#include <string>
#include <vector>

#include "phibv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phibv::cli::run(args, std::cout, std::cerr);
}
