#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ortho {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the acceptance criteria (the desk-scale verification budget).
/// Progress lines go to `log` (may be null).
std::vector<CriterionResult> run_acceptance(std::ostream* log);

} // namespace ortho
