#include <iostream>
#include <string>
#include <vector>

#include "inar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return inar::cli::dispatch(args, std::cout, std::cerr);
}
