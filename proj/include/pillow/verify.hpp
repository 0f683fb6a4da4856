#pragma once

// Cross-route verification: closed form vs recurrence vs ribbon oracle,
// tree volumes vs the closed volume formula, Frobenius vs direct search.

#include "pillow/covers.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pillow {

struct VerifyOptions {
    int K_max = 2;
    int mn_max = 6;
    int cover_N_max = 5;
    int jobs = 1;
    /// Ribbon transform identity only for signatures with at most this many darts.
    int oracle_darts_max = 12;
    /// Lattice fit only for signatures with at most this many edges.
    int fit_edges_max = 7;
    /// Perturbs one closed-form coefficient so that the run must fail.
    bool inject_fault = false;
    CharacterCache* cache = nullptr;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string lhs;
    std::string rhs;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* first_failure() const;
};

/// Runs every check; `progress` (if set) sees each result as it completes.
VerifyReport run_verification(const VerifyOptions& options,
                              const std::function<void(const CheckResult&)>& progress = {});

}  // namespace pillow
