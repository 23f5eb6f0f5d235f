#include <fstream>
#include <iostream>

#include "fin2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = fin2::run(args);
  if (result.output) {
    std::ofstream out(result.output->path, std::ios::binary);
    out << result.output->content;
    if (!out) {
      std::cerr << "error: IOError: cannot write " << result.output->path << "\n";
      return 1;
    }
  }
  (result.exit_code == 0 ? std::cout : std::cerr) << result.report;
  return result.exit_code;
}
