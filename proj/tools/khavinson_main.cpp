#include <iostream>

#include "khavinson/cli.hpp"

int main(int argc, char** argv) {
  return khavinson::cli::run(argc, argv, std::cout, std::cerr);
}
