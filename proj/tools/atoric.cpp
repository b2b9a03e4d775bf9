#include <atoric/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return atoric::cli::run(args, std::cout, std::cerr);
}
