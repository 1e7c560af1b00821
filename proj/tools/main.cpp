#include "berger/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return berger::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
