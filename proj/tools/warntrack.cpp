#include <warntrack/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return warntrack::cli::run(argc, argv, std::cout, std::cerr);
}
