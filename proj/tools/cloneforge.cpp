#include <iostream>
#include <string>
#include <vector>

#include "cloneforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out;
  std::string err;
  const int code = cloneforge::cli::main_entry(args, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}
