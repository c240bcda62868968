#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "sharpfr/certified.hpp"

namespace sharpfr::cli {

enum class Command { SphereTables, SphereVerify, SchrodVerify, WaveAudit, PenroseCheck, DeficitDemo, All };
enum class Format { Csv, Json };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

/// Exit codes of run().
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 4;

/// PASS -> 0, FAIL -> 1, INCONCLUSIVE -> 2.
int exit_code(Verdict v);

/// Unset optional fields fall back to per-command defaults.
struct RunConfig {
    Command command = Command::All;
    std::optional<int> d_min;
    std::optional<int> d_max;
    std::optional<int> d;  // shorthand for d_min = d_max = d
    double tol = 1e-9;
    std::optional<double> r_max;
    std::optional<int> m_max;
    std::optional<int> k_max;
    std::optional<int> ell_max;
    Format format = Format::Json;
    /// Output directory; empty means $SHARPFR_OUTPUT_DIR, then the working directory.
    std::string output;
    int jobs = 1;
};

/// Throws DomainError when the configuration is inconsistent.
void validate(const RunConfig& config);

/// Runs the command, writes its artifacts and prints one summary line per certificate to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sharpfr::cli
