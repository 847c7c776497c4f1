#include <iostream>

#include "dcpsf/cli.hpp"

int main(int argc, char** argv) {
  return dcpsf::cli::run(argc, argv, std::cout, std::cerr);
}
