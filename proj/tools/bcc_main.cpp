#include <iostream>

#include "bcc/cli.hpp"

int main(int argc, char** argv) {
  return bcc::run_cli(argc, argv, std::cout, std::cerr);
}
