#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellpoisson/report.hpp"

namespace ellpoisson
{

struct SuiteOptions
{
    std::uint64_t seed = 1;
    // Directory holding casimir_n4.txt and casimir_n6.txt; empty skips the
    // golden-file comparison.
    std::string golden_dir;
};

struct CriterionResult
{
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<Report> reports;
};

// Acceptance criteria 1 to 12 in order. Criterion 12 reruns criteria 1 to 11
// and compares the serialized reports byte for byte.
std::vector<CriterionResult> run_acceptance(const SuiteOptions &opts);

// Criteria 1 to 11 only.
std::vector<CriterionResult> run_acceptance_core(const SuiteOptions &opts);

// One JSON line per report, in criterion order.
std::string serialize_reports(const std::vector<CriterionResult> &results);

// Golden file name for the Casimirs of n, e.g. "casimir_n4.txt".
std::string golden_file_name(int n);

} // namespace ellpoisson
