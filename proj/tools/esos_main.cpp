#include <string>
#include <vector>

#include "esos/cli.hpp"

int main(int argc, char** argv) {
    return esos::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
