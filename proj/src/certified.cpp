#include "sharpfr/certified.hpp"

#include <algorithm>
#include <limits>

namespace sharpfr {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::Fail: return "FAIL";
    }
    return "FAIL";
}

Verdict worst(Verdict a, Verdict b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

void CertReport::add(Inequality check) {
    const double slack = check.rhs != 0.0 ? 1.0 - check.lhs / check.rhs
                                          : -std::numeric_limits<double>::infinity();
    epsilon = checks.empty() ? slack : std::min(epsilon, slack);
    verdict = worst(verdict, check.verdict);
    checks.push_back(std::move(check));
}

}  // namespace sharpfr
