#include <iostream>

#include "gausslab/errors.hpp"
#include "gausslab_cli/config.hpp"
#include "gausslab_cli/run.hpp"

int main(int argc, char** argv) {
  using namespace gausslab::cli;
  ParseOutcome parsed;
  try {
    parsed = parse_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.config, std::cout, std::cerr);
}
