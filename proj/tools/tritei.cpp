#include <iostream>
#include <string>
#include <vector>

#include "tritei/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return tritei::cli::run(args, std::cout, std::cerr);
}
