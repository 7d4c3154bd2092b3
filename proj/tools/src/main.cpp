#include <iostream>
#include <string>
#include <vector>

#include "fermat_app/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fermat::app::run_cli(args, std::cout, std::cerr);
}
