#include <CLI11.hpp>

#include "qd/fusion.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quantum double simulator"};
  app.require_subcommand(0);
  CLI11_PARSE(app, argc, argv);
  return 0;
}
