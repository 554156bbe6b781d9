#include <iostream>

#include "doubletop/acceptance.hpp"

int main() {
    doubletop::AcceptanceOptions opt;
    opt.seed = doubletop::seed_from_env();
    auto results = doubletop::run_acceptance(std::cout, opt);
    int failed = 0;
    double total = 0;
    for (const auto& r : results) {
        failed += !r.pass;
        total += r.seconds;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed in " << total << " s\n";
    return failed == 0 ? 0 : 1;
}
