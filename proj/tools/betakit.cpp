#include <iostream>

#include "betakit/cli.hpp"

int main(int argc, char** argv) {
  return betakit::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
