#include <iostream>

#include "wzcert/driver.hpp"

int main(int argc, char** argv) { return wzcert::cli_dispatch(argc, argv, std::cout, std::cerr); }
