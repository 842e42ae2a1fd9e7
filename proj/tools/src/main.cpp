#include <iostream>

#include <minkspec/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minkspec::run_cli(args, std::cout, std::cerr);
}
