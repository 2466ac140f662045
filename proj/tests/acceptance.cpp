// Acceptance suite: one pass/fail line per criterion; nonzero exit on any
// failure.
#include <cstdio>

#include "orthoreal/verify.hpp"

int main() {
    auto results = ortho::run_acceptance(nullptr);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d (%6.1fs): %s%s%s\n", r.passed ? "PASS" : "FAIL", r.id, r.seconds,
                    r.title.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASSED" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
