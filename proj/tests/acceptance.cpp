#include <cstdio>
#include <string>

#include "hartley/suites.hpp"

// One line per acceptance criterion; failing checks are listed beneath it.
int main(int argc, char** argv) {
    using namespace hartley::suites;
    int failures = 0;
    int index = 0;
    for (const auto& name : suite_names()) {
        ++index;
        if (argc > 1 && name != argv[1]) continue;
        const auto rep = run_suite(name);
        std::printf("%s criterion %d %-12s %3zu checks  %7.2f s (budget %.0f s)\n", rep.passed() ? "PASS" : "FAIL", index,
                    name.c_str(), rep.checks.size(), rep.seconds, runtime_budget(name));
        for (const auto& c : rep.checks) {
            if (!c.pass) std::printf("    failed %s: value %.6g threshold %.6g\n", c.name.c_str(), c.value, c.threshold);
        }
        std::fflush(stdout);
        if (!rep.passed()) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
