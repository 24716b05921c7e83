// Runs every suite and prints one PASS/FAIL line per acceptance criterion.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "majority/suites.hpp"

int main()
{
    using namespace majority;
    struct Tally {
        int cases = 0;
        int failed = 0;
        double seconds = 0;
        std::vector<std::string> failures;
    };
    std::map<int, Tally> by_criterion;
    for (int c = 1; c <= 10; ++c) by_criterion[c];
    int supplementary_failed = 0;

    for (const auto& name : suite_names()) {
        const SuiteReport report = run_suite(name);
        for (const auto& r : report.cases) {
            if (r.criterion == 0) {
                if (!r.pass) {
                    ++supplementary_failed;
                    std::printf("supplementary FAIL %s / %s: %s\n  reproduce: %s\n", name.c_str(), r.name.c_str(),
                                r.detail.c_str(), r.repro.c_str());
                }
                continue;
            }
            Tally& t = by_criterion[r.criterion];
            ++t.cases;
            t.seconds += r.seconds;
            if (!r.pass) {
                ++t.failed;
                t.failures.push_back(r.name + ": " + r.detail + "\n    reproduce: " + r.repro);
            }
        }
    }

    bool all = true;
    for (const auto& [criterion, t] : by_criterion) {
        const bool pass = t.cases > 0 && t.failed == 0;
        all = all && pass;
        std::printf("criterion %2d: %s (%d/%d cases, %.1f s)\n", criterion, pass ? "PASS" : "FAIL", t.cases - t.failed, t.cases,
                    t.seconds);
        for (const auto& f : t.failures) std::printf("  %s\n", f.c_str());
    }
    if (supplementary_failed > 0) std::printf("%d supplementary case(s) failed\n", supplementary_failed);
    return all ? 0 : 1;
}
