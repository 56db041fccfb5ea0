#include <CLI11.hpp>

#include "klrw/json_io.hpp"
#include "klrw/monopole.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"cylindrical KLRW / Coulomb branch toolkit"};
  app.require_subcommand(1);
  std::cout << "stub\n";
  (void)argc;
  (void)argv;
  return 0;
}
