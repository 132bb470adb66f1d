#include <vector>
#include <string>

#include "santalo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return santalo::run_cli(args);
}
