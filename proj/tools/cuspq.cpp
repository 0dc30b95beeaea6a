#include <iostream>

#include <cuspq/cli.hpp>

int main(int argc, char** argv) { return cuspq::cli::run(argc, argv, std::cout, std::cerr); }
