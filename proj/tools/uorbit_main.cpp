#include <iostream>
#include <string>
#include <vector>

#include "uorbit/cli.hpp"

int main(int argc, char** argv) {
  return uorbit::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
