#include <iostream>
#include <string>
#include <vector>

#include "dnormal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dnormal::cli::run(args, std::cout, std::cerr);
}
