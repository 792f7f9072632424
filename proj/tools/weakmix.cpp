// `weakmix scan ...` is shorthand for `linvol weakmix scan ...`.
#include "linvol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  args.insert(args.begin() + 1, "weakmix");
  return linvol::cli::run(args);
}
