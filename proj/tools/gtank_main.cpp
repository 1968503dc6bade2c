#include <iostream>
#include <string>
#include <vector>

#include "gtank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gtank::cli::dispatch(args, std::cout, std::cerr);
}
