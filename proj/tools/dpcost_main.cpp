#include <iostream>
#include <string>
#include <vector>

#include "dpcost/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dpcost::cli_dispatch(args, std::cout, std::cerr);
}
