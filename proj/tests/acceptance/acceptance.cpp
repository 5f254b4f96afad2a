// Runs the twelve acceptance criteria, one PASS/FAIL line each.
//
// Exit status is nonzero when a criterion fails that is not listed in
// kKnownFailures; listed criteria still print FAIL with their measurement.

#include <cstdio>
#include <cstdlib>
#include <set>

#include <fmt/format.h>

#include "transwave/simd.hpp"
#include "transwave/suites.hpp"

namespace {

// Criteria whose target is not met by the implementation as measured (see README).
const std::set<int> kKnownFailures{7};

}  // namespace

int main() {
    fmt::print("isa: {}\n", tw::simd::isa_name(tw::simd::active_isa()));
    int unexpected = 0, failed = 0;
    for (const auto& c : tw::acceptance_criteria()) {
        const auto r = tw::run_criterion(c);
        const bool known = kKnownFailures.count(r.id) > 0;
        fmt::print("{} [{:2}] {} ({:.2f} s): {}{}\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.seconds, r.detail,
                   !r.pass && known ? " [known failure]" : "");
        std::fflush(stdout);
        if (!r.pass) {
            ++failed;
            if (!known) ++unexpected;
        }
    }
    fmt::print("{} of 12 criteria passed; {} unexpected failure(s)\n", 12 - failed, unexpected);
    return unexpected == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
