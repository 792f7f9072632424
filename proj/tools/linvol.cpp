#include "linvol/cli.hpp"

int main(int argc, char** argv) { return linvol::cli::run(argc, argv); }
