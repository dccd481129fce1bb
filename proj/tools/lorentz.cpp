#include <cstdio>
#include <string>
#include <vector>

#include "lorentz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out;
  int code = lorentz::run_cli(args, out);
  std::fputs(out.c_str(), stdout);
  return code;
}
