#include <iostream>

#include "entbounds/cli.hpp"

int main(int argc, char** argv)
{
    return entb::run_cli(argc, argv, std::cout, std::cerr);
}
