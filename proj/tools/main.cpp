#include <string>
#include <vector>

#include "pickplace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pickplace::run_cli(args);
}
