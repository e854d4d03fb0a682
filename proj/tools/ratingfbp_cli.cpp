#include "ratingfbp/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ratingfbp::run_cli(argc, argv, std::cout, std::cerr);
}
