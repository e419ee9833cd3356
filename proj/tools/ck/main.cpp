#include <iostream>

#include "ck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ck::cli::run(args, std::cout, std::cerr);
}
