#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringbif/landau.hpp"

namespace ringbif::verify {

struct Check {
    std::string group;
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
    bool informational = false;  // reported, never counted as a failure
};

struct SuiteOptions {
    std::optional<landau::TermFault> fault;
    bool include_bvp = true;
    bool include_cli = true;
};

std::vector<Check> run_oracle_suite(const SuiteOptions& opts = {});

// "a4:t3" or "a4:t3:1.5" (default factor 2).
landau::TermFault parse_fault(const std::string& spec);

// Ratio of Fourier-coefficient gaps between the bordered BVP solution and the asymptotic series when
// alpha is halved from alpha_hi, measured at mu1 on the n = 2 curve with mu2 free.
struct GapRatio {
    double gap_hi = 0.0, gap_lo = 0.0, ratio = 0.0;
};
GapRatio asymptotic_gap_ratio(double mu1, double alpha_hi = 0.04, int harmonics = 12);

}  // namespace ringbif::verify
