#include <iostream>

#include "propm/cli.hpp"

int main(int argc, char** argv)
{
    return propm::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
