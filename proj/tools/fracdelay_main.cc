#include <iostream>

#include "fracdelay/commands.h"

int main(int argc, char** argv) {
  return fracdelay::RunCli(argc, argv, std::cout, std::cerr);
}
