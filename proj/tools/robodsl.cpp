#include <cstdlib>
#include <cstring>
#include <iostream>

#include <unistd.h>

#include "robodsl/cli.hpp"

int main(int argc, char** argv) {
  const char* mode = std::getenv("ROBODSL_COLOR");
  const bool color = !(mode && std::strcmp(mode, "never") == 0) && isatty(STDERR_FILENO);
  return robodsl::cli::run(argc, argv, {std::cout, std::cerr, color});
}
