#include <hrigid/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return hrigid::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
