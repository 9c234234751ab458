#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwp/halfint.hpp"

namespace qwp {

enum class OutputFormat { csv, json };

/// Flags override the key=value config file, which overrides these defaults.
struct RunConfig {
    double q = 0.5;
    double tol = 1e-9;
    int k = 1;
    int l = 1;
    HalfInt j_max = HalfInt::from_int(2);
    HalfInt lambda_max = HalfInt::from_int(5);
    std::int64_t n = 0;
    OutputFormat format = OutputFormat::csv;
    std::string out;  // empty: standard output
};

/// Accepts "3/2", "1.5" or "2".
std::optional<HalfInt> parse_half_int(const std::string& text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the command-line tool; every byte of output goes to `out` or the --out file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwp
