#include <iostream>

#include "freelike/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return freelike::cli::run(args, std::cout, std::cerr);
}
