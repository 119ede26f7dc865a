#include <iostream>

#include "mvcurl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mvcurl::cli_run(args, std::cout, std::cerr);
}
