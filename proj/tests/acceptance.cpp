// Acceptance runner: one line per criterion, exit 0 iff all pass.

#include <cstdio>

#include "crnf/selfcheck.hpp"

int main() {
    int failed = 0;
    int n = 0;
    for (const crnf::CheckResult& r : crnf::run_acceptance_suite()) {
        ++n;
        std::printf("criterion %d [%s]: %s (%s)\n", n, r.pass ? "pass" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failed;
    }
    if (failed) {
        std::printf("%d of %d criteria failed\n", failed, n);
        return 1;
    }
    std::printf("all %d criteria passed\n", n);
    return 0;
}
