#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "santalo/report.hpp"

namespace santalo {

struct SuiteOptions {
    std::uint64_t seed = 20240901;
    std::size_t threads = 0;  // 0: SANTALO_LAB_THREADS, else hardware parallelism
};

/// One acceptance criterion: a named batch of checks with its own pass flag,
/// measured runtime, human-readable detail lines and every produced report.
struct CriterionResult {
    std::string name;
    bool passed = true;
    double runtime_seconds = 0.0;
    std::vector<std::string> details;
    std::vector<VerificationReport> reports;
};

/// Runs the full acceptance battery (every verifier covered at least once).
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts = {});

/// Effective parallelism cap: SANTALO_LAB_THREADS when set, else hardware.
std::size_t suite_thread_count(std::size_t requested = 0);

}  // namespace santalo
