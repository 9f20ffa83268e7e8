#include <vector>

#include "hak/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hak::run_cli(args);
}
