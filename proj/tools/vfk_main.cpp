#include <iostream>

#include "vfk/service/cli.hpp"

int main(int argc, char** argv) { return vfk::service::run_cli(argc, argv, std::cout, std::cerr); }
