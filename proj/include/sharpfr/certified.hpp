#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sharpfr {

/// A numeric estimate with an absolute error bound.
///
/// `err_bound` is the full two-sided budget (quadrature error plus any truncation tail).
/// `tail_bound` is the part of that budget which is known to be one-sided: the neglected
/// tail is nonnegative, so the true value lies in [lower(), upper()].
struct CertifiedValue {
    double value = 0.0;
    double err_bound = 0.0;
    double tail_bound = 0.0;

    double lower() const { return value - (err_bound - tail_bound); }
    double upper() const { return value + err_bound; }
};

enum class Verdict { Pass, Inconclusive, Fail };

std::string_view to_string(Verdict v);

/// Worst of two verdicts (Fail > Inconclusive > Pass).
Verdict worst(Verdict a, Verdict b);

/// One strict inequality `lhs < rhs` that a certificate depends on.
struct Inequality {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    Verdict verdict = Verdict::Pass;
};

struct CertReport {
    std::string subject;
    Verdict verdict = Verdict::Pass;
    std::vector<Inequality> checks;
    std::vector<std::string> flags;
    /// Smallest relative slack 1 - lhs/rhs over the checks (the epsilon of a coercivity bound).
    double epsilon = 0.0;

    void add(Inequality check);
    bool passed() const { return verdict == Verdict::Pass; }
};

}  // namespace sharpfr
