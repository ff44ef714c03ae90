#include <iostream>

#include "nosreg/acceptance.hpp"

int main() {
    const auto results = nosreg::run_acceptance();
    nosreg::print_acceptance(std::cout, results);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
