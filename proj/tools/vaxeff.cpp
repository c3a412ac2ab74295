#include "cli/commands.hpp"

#include <iostream>
#include <locale>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::cout.imbue(std::locale::classic());
    std::vector<std::string> args(argv + 1, argv + argc);
    return vaxeff::cli::run(args, std::cout, std::cerr);
}
