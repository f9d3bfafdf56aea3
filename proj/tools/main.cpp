#include <cstdio>
#include <string>
#include <vector>

#include "equichord/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return equichord::cli::main_entry(args, stdout, stderr);
}
