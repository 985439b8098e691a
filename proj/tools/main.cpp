#include <iostream>

#include "sketchlevel/cli.hpp"

int main(int argc, char** argv) {
  return sketchlevel::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
