#include <iostream>
#include <string>
#include <vector>

#include "ldt_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ldt::cli::run(args, std::cout, std::cerr);
}
