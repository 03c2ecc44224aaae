#include <iostream>
#include <string>
#include <vector>

#include "tfcolor/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    const std::vector<std::string> args(argv + 1, argv + argc);
    return tfcolor::cli::cli_main(args, std::cout, std::cerr, std::cin);
}
