#pragma once

#include <string>
#include <vector>

#include "cvsim/common.hpp"

namespace cvsim {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the module invariant suites (transform unitarity, gate algebra,
/// uncertainty floors, cross-backend agreement, Wigner normalization) with
/// fixed inputs. `inject_hbar_fault` deliberately mismatches hbar between
/// two backends in the cross-backend check, for exercising the failure
/// path.
std::vector<CheckResult> run_verification(HBar hbar,
                                          bool inject_hbar_fault = false);

} // namespace cvsim
