#include <iostream>

#include "crossflow/cli.hpp"

int main(int argc, char** argv) {
  return crossflow::cli::run_cli(argc, argv, std::cout, std::cerr);
}
