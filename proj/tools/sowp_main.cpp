#include <iostream>
#include <string>
#include <vector>

#include "sowp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args.front() == "-h" || args.front() == "--help" || args.front() == "help") {
        std::cout << sowp::cli::usage();
        return args.empty() ? sowp::cli::exit_config : sowp::cli::exit_ok;
    }
    sowp::cli::RunConfig cfg;
    try {
        cfg = sowp::cli::parse_config(args);
    } catch (const sowp::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n\n" << sowp::cli::usage();
        return sowp::cli::exit_config;
    }
    return sowp::cli::run(cfg, std::cout, std::cerr);
}
