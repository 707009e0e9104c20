#include <iostream>

#include "symarea/cli/commands.hpp"

int main(int argc, char** argv) {
  return symarea::cli::run(argc, argv, std::cout, std::cerr);
}
