// Acceptance runner: executes the full reference reproduction suite, one
// line per criterion, then a harness sanity check (a perturbed expected
// constant must turn its row red). Exits nonzero on any failure.

#include <cstdio>

#include "pairnorm/verify.hpp"

int main() {
    using namespace pairnorm;

    int failures = 0;
    for (const CheckRow& row : run_reference_suite()) {
        std::printf("%s  %s  %s\n", row.pass ? "PASS" : "FAIL", row.id.c_str(),
                    row.name.c_str());
        if (!row.pass) {
            std::printf("      %s\n", row.detail.c_str());
            ++failures;
        }
    }

    VerifyOptions perturbed;
    perturbed.perturb = 1e-3;
    perturbed.only_id = 1;
    const auto sanity = run_reference_suite(perturbed);
    const bool sanity_ok = sanity.size() == 1 && !sanity[0].pass;
    std::printf("%s  H  harness sanity (perturbed constant turns row 1 red)\n",
                sanity_ok ? "PASS" : "FAIL");
    if (!sanity_ok) ++failures;

    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
