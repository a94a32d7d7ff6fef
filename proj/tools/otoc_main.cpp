#include <string>
#include <vector>

#include "otoc/run_config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return otoc::cli_main(args);
}
