#include <iostream>

#include "hermlock/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hermlock::cli::run(args, std::cout, std::cerr);
}
