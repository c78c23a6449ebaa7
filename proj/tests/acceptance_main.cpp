// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstring>
#include <iostream>

#include "fop/acceptance.hpp"

int main(int argc, char** argv) {
    fop::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opts = fop::AcceptanceOptions::quick(3);
    }
    auto results = fop::run_acceptance(opts);
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        std::cout << fop::format_result(r) << "\n";
        all = all && r.passed;
        total += r.seconds;
    }
    std::cout << (all ? "ALL PASS" : "FAILURES PRESENT") << " (" << static_cast<long long>(total)
              << " s total)\n";
    return all ? 0 : 1;
}
