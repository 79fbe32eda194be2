#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "szego/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int criterion = 0;
    szego::AcceptanceOptions options;
    app.add_option("--criterion", criterion, "run only this criterion (1-10)")->check(CLI::Range(1, szego::kCriterionCount));
    app.add_option("--seed", options.seed, "seed for randomized cases");
    app.add_option("--threads", options.threads, "worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    if (criterion) options.criteria = {criterion};

    bool all = true;
    for (const auto& r : szego::run_acceptance(options)) {
        std::cout << szego::format_line(r) << std::endl;
        all = all && r.passed;
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
