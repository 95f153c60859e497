#include <string>
#include <vector>

#include "geonium/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return geonium::cli::run(args);
}
