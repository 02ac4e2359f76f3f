#include <iostream>

#include "igusa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return igusa::cli::run(args, std::cout, std::cerr);
}
