#include <iostream>

#include "ellpoisson/suite.hpp"

int main(int argc, char **argv)
{
    ellpoisson::SuiteOptions opts;
    opts.golden_dir = argc > 1 ? argv[1] : ELLPOISSON_GOLDEN_DIR;
    int failed = 0;
    for (const auto &c : ellpoisson::run_acceptance(opts)) {
        std::cout << "criterion " << c.id << ": " << (c.passed ? "PASS" : "FAIL") << " - " << c.title << '\n';
        if (c.passed) {
            continue;
        }
        ++failed;
        for (const auto &r : c.reports) {
            if (!r.passed()) {
                std::cout << "    " << r.to_json().dump() << '\n';
            }
        }
    }
    return failed == 0 ? 0 : 1;
}
