// Acceptance runner: one PASS/FAIL line per criterion, JSON report on request.
#include "lptensor/core/error.hpp"
#include "lptensor/core/interchange.hpp"
#include "lptensor/harness/harness.hpp"

#include <cstdio>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "all";
    std::string report = argc > 2 ? argv[2] : "";
    lpt::harness::AcceptanceOptions opts;
    opts.on_result = [](const lpt::harness::CriterionResult& r) {
        std::printf("AC%-2d %s  %-40s %8.2fs  %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                    r.detail.c_str());
        for (const auto& f : r.failures) std::printf("      - %s\n", f.c_str());
        std::fflush(stdout);
    };
    try {
        auto rep = lpt::harness::run_acceptance(suite, opts);
        if (!report.empty()) lpt::write_text_file(report, lpt::harness::to_json(rep));
        std::printf("%s: %s\n", suite.c_str(), rep.passed() ? "all criteria pass" : "FAILURES");
        return rep.passed() ? 0 : 1;
    } catch (const lpt::UnsupportedError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
}
