#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::cout << std::unitbuf;
  std::cerr << std::unitbuf;
  return bcv::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
