#pragma once

#include <string>
#include <vector>

namespace pairnorm {

struct CheckRow {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    // Shifts the expected reference constants; nonzero values must turn the
    // affected rows red (harness sanity hook).
    double perturb = 0.0;
    // Run a single row by id (0 = all rows).
    int only_id = 0;
};

/// Runs the full reproduction suite of the library's reference results and
/// structural invariants; one row per criterion.
std::vector<CheckRow> run_reference_suite(const VerifyOptions& opts = {});

}  // namespace pairnorm
