#include <iostream>

#include "sublat/cli.hpp"

int main(int argc, char** argv) {
  return sublat::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
