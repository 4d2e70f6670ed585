#include <iostream>
#include <string>
#include <vector>

#include "gpdkit/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gpdkit::run_cli(args, std::cout, std::cerr);
}
