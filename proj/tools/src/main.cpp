#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "darboux_lab/parallel.hpp"

int main(int argc, char** argv) {
    dlab::configure_threads_from_env();
    const std::vector<std::string> args(argv, argv + argc);
    return dlab::cli::run_cli(args, std::cout, std::cerr);
}
