// Acceptance suite runner: one pass/fail line per criterion.
#include <cstdio>

#include "acceptance.hpp"

int main() {
    const auto results = naifs::run_acceptance();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d (%6.2fs): %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.seconds, r.name.c_str());
        if (!r.details.empty()) std::printf("        %s\n", r.details.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
