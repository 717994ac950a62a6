#include <iostream>
#include <string>
#include <vector>

#include "lagcfg/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const lagcfg::cli::CommandResult r = lagcfg::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
