#pragma once

#include <string>
#include <vector>

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    int passed_count() const {
        int n = 0;
        for (const auto& c : checks)
            if (c.passed) ++n;
        return n;
    }
};

/// Numerical invariant suite behind `delta-spectra validate`.
/// fast = reduced grids (under a minute end to end).
ValidationReport run_validation(bool fast);
