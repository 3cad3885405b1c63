#include <vector>

#include "proofselect/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return proofselect::dispatch(args);
}
