#include <iostream>

#include "bmean/cli.hpp"

int main(int argc, char** argv) {
  return bmean::cli::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
