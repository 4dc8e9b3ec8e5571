#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padix/rational.hpp"

namespace padix {

// One row of the per-package verification: v_p(n!) constant on the package
// (Prop-1 style), exactly one carry while its terms are added, and digit
// count v + 2 at the package's last index.
struct PackageRecord {
    std::uint64_t k = 0;
    std::uint64_t valuation = 0;
    bool valuation_constant = false;
    std::uint64_t carry_count = 0;
    std::size_t digit_count_end = 0;
    std::size_t digit_count_expected = 0;
    bool pass = false;  // valuation_constant && carry_count == 1 && counts equal
};

// One row per exponent r for n = p^r: the digit-count jump r-1, the r-2
// zero digits directly below the new leading 1, and their fixity in every
// later partial sum checked and in the full-precision series value.
struct PrefixRecord {
    std::uint64_t r = 0;
    std::uint64_t n = 0;       // p^r
    std::uint64_t v_top = 0;   // v_p(n!)
    std::uint64_t v_prev = 0;  // v_p((n-1)!)
    std::int64_t jump = 0;     // digit_count(S_n) - digit_count(S_{n-1})
    std::uint64_t zero_run = 0;  // zeros observed directly below the leading digit
    bool frozen = false;
    bool pass = false;  // jump == r-1 && zero_run >= r-2 && v_top-v_prev == r && frozen
};

// Smallest precision accepted by verify_packages / verify_power_prefix
// (one digit above the highest digit count the check must observe).
std::size_t minimal_precision_for_packages(std::uint64_t p, std::uint64_t k_max);
std::size_t minimal_precision_for_prefix(std::uint64_t p, std::uint64_t r_max);
std::uint64_t minimal_freeze_horizon(std::uint64_t p, std::uint64_t r_max);  // p^r_max

// One record per k in [0, k_max], from a sequential partial-sum stream of
// the alpha series.  Requires precision >= minimal_precision_for_packages
// (InsufficientParameter otherwise, carrying the minimal value).
std::vector<PackageRecord> verify_packages(std::uint64_t p, std::uint64_t k_max,
                                           std::size_t precision);

// One record per r in [3, r_max].  Fixity is checked against every partial
// sum up to max(freeze_horizon, stop index) and against the series value at
// full precision.  Requires r_max >= 3, precision >=
// minimal_precision_for_prefix and freeze_horizon >= p^r_max.
std::vector<PrefixRecord> verify_power_prefix(std::uint64_t p, std::uint64_t r_max,
                                              std::size_t precision,
                                              std::uint64_t freeze_horizon);

// Bounded period search over the alpha series digits plus the prefix
// verification as corroborating structure.  prefix_r_max is chosen from the
// precision (0 when the precision admits no r >= 3, in which case
// prefix_records is empty).
struct NonperiodicityReport {
    std::uint64_t prime = 0;
    std::size_t precision = 0;
    DetectBounds bounds;
    DetectResult detection;  // none_within_bounds expected
    std::uint64_t prefix_r_max = 0;
    std::uint64_t prefix_freeze_horizon = 0;
    std::vector<PrefixRecord> prefix_records;
};

NonperiodicityReport nonperiodicity_report(std::uint64_t p, std::size_t precision,
                                           const DetectBounds& bounds);

// Bundled evidence report.
struct ReportSpec {
    std::uint64_t prime = 0;
    // 0 = auto: the smallest precision sufficient for every enabled check
    // (and >= max_preperiod + min_repeats * max_period for the search).
    std::size_t precision = 0;

    bool check_packages = true;
    std::uint64_t k_max = 100;

    bool check_prefix = true;  // skipped when r_max < 3
    std::uint64_t r_max = 3;
    std::uint64_t freeze_horizon = 0;  // 0 = minimal (p^r_max)

    bool check_nonperiodicity = true;
    DetectBounds bounds{64, 32, 3};

    // Verbatim timestamp to embed; leave empty for byte-deterministic output.
    std::optional<std::string> stamp;
};

struct ReportResult {
    bool all_pass = false;
    std::string json;  // {checks, format_version, precision, prime, tool_version}
};

ReportResult build_report(const ReportSpec& spec);

}  // namespace padix
