#include "uclosed/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return uclosed::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
