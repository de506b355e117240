#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nbekcf {

// Outcome of one randomized oracle-equivalence suite. Deviations are
// entrywise |fast - reference| / max(1, |fast|, |reference|); integer-valued
// instances must agree exactly and count as failures otherwise.
struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double max_deviation = 0.0;
    std::string first_failure;  // parameters of the first failing case

    bool passed() const { return failures == 0; }
};

// Each suite runs `cases` randomized instances from the given seed and
// compares the fast path against its brute-force reference. Identical
// arguments produce identical verdicts.
SuiteResult run_acsii_suite(int cases, std::uint64_t seed);
SuiteResult run_ccim_suite(int cases, std::uint64_t seed);
SuiteResult run_kernel_suite(int cases, std::uint64_t seed);
SuiteResult run_regression_suite(int cases, std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(int cases, std::uint64_t seed);

}  // namespace nbekcf
