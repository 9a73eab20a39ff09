#include <iostream>

#include "sievelab/cli.hpp"

int main(int argc, char** argv) { return sievelab::dispatch(argc, argv, std::cout, std::cerr); }
