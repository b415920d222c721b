#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qsthermo/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto parsed = qsthermo::parse_args(args);
  if (!parsed.should_run) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  try {
    return qsthermo::run(parsed.config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
