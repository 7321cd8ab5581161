#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto const result = earring::cli::run(args);
  auto const out    = result.render();
  if (result.exit == earring::cli::Exit::usage && !result.json) {
    std::cerr << out;
  } else {
    std::cout << out;
  }
  return static_cast<int>(result.exit);
}
