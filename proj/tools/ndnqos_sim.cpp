#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "ndnqos/experiment.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto plan = ndnqos::parse_plan(args);
        if (!plan)
            return 0; // --help
        return ndnqos::run_plan(*plan);
    } catch (const ndnqos::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "run with --help for the flag list\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
