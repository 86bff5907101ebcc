#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return arimle::cli::RunCli(argc, argv, std::cout, std::cerr);
}
