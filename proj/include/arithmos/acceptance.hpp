#pragma once

#include <string>
#include <vector>

namespace arithmos::acceptance {

// quick trims sample counts and truncations so the whole run fits in a couple
// of minutes; full runs every criterion at its stated size.
enum class Profile { quick, full };

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string measured;  // deterministic summary of the measured values
    double seconds = 0.0;  // wall time, reported separately so reports stay reproducible
};

std::vector<CriterionResult> run_all(Profile profile);
CriterionResult run_one(int id, Profile profile);
constexpr int criterion_count = 19;

// One line per criterion: "[PASS] 07 axis equidistribution: ...".
std::string format_line(const CriterionResult& r, bool with_time = false);

}  // namespace arithmos::acceptance
