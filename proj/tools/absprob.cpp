#include <iostream>
#include <string>
#include <vector>

#include "absprob/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return absprob::run(args, std::cout, std::cerr);
}
