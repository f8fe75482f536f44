#include <string>
#include <vector>

#include "fiolab/experiments.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fiolab::cli_run(args);
}
