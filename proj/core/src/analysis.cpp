#include "padix/analysis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "padix/errors.hpp"
#include "padix/primality.hpp"
#include "padix/series.hpp"
#include "padix/valuation.hpp"
#include "padix/version.hpp"

namespace padix {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 checked_pow(u64 p, u64 r) {
    u64 result = 1;
    for (u64 i = 0; i < r; ++i) {
        if (result > std::numeric_limits<u64>::max() / p) {
            throw std::invalid_argument("p^r overflows: p=" + std::to_string(p) +
                                        " r=" + std::to_string(r));
        }
        result *= p;
    }
    return result;
}

}  // namespace

std::size_t minimal_precision_for_packages(u64 p, u64 k_max) {
    require_prime(p);
    if (k_max > (std::numeric_limits<u64>::max() / p) - 1) {
        throw std::invalid_argument("k_max too large for p");
    }
    return static_cast<std::size_t>(package_valuation(k_max, p)) + 3;
}

std::size_t minimal_precision_for_prefix(u64 p, u64 r_max) {
    require_prime(p);
    return static_cast<std::size_t>(vp_factorial(checked_pow(p, r_max), p)) + 3;
}

u64 minimal_freeze_horizon(u64 p, u64 r_max) {
    require_prime(p);
    return checked_pow(p, r_max);
}

std::vector<PackageRecord> verify_packages(u64 p, u64 k_max, std::size_t precision) {
    const std::size_t min_n = minimal_precision_for_packages(p, k_max);
    if (precision < min_n) {
        throw InsufficientParameter(
            "precision", min_n,
            "precision " + std::to_string(precision) + " truncates digit counts up to k_max=" +
                std::to_string(k_max) + "; need at least " + std::to_string(min_n));
    }

    std::vector<PackageRecord> records;
    records.reserve(static_cast<std::size_t>(k_max) + 1);
    PartialSumStream stream(SeriesKind::alpha, p, precision);
    for (u64 k = 0; k <= k_max; ++k) {
        PackageRecord rec;
        rec.k = k;
        rec.valuation = package_valuation(k, p);
        rec.valuation_constant = true;
        rec.carry_count = 0;
        for (u64 i = 0; i < p; ++i) {
            stream.step();
            if (stream.last_term_valuation() != rec.valuation) {
                rec.valuation_constant = false;
            }
            rec.carry_count += stream.last_carries().count();
        }
        rec.digit_count_end = stream.digit_count();
        rec.digit_count_expected = static_cast<std::size_t>(rec.valuation) + 2;
        rec.pass = rec.valuation_constant && rec.carry_count == 1 &&
                   rec.digit_count_end == rec.digit_count_expected;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<PrefixRecord> verify_power_prefix(u64 p, u64 r_max, std::size_t precision,
                                              u64 freeze_horizon) {
    require_prime(p);
    if (r_max < 3) throw std::invalid_argument("r_max must be >= 3");
    const u64 n_top_max = checked_pow(p, r_max);
    const std::size_t min_n = minimal_precision_for_prefix(p, r_max);
    if (precision < min_n) {
        throw InsufficientParameter(
            "precision", min_n,
            "precision " + std::to_string(precision) + " truncates digit counts at r_max=" +
                std::to_string(r_max) + "; need at least " + std::to_string(min_n));
    }
    if (freeze_horizon < n_top_max) {
        throw InsufficientParameter(
            "freeze_horizon", n_top_max,
            "freeze_horizon " + std::to_string(freeze_horizon) + " does not reach p^r_max = " +
                std::to_string(n_top_max));
    }

    struct Watch {
        std::size_t lo = 0, hi = 0;  // positions [lo, hi] must stay zero
        bool ok = true;
    };

    std::vector<PrefixRecord> records(static_cast<std::size_t>(r_max - 2));
    std::vector<Watch> watches(records.size());
    std::vector<std::size_t> prev_count(records.size(), 0);

    u64 next_power = checked_pow(p, 3);
    std::size_t next_slot = 0;  // index of the first record not yet captured

    // Every partial sum from the stop index on equals the series value mod
    // p^N, so walking there covers the "frozen in the full sum" check too.
    const u64 walk_to = std::max(freeze_horizon, series_stop_index(p, precision));

    PartialSumStream stream(SeriesKind::alpha, p, precision);
    for (u64 n = 0; n <= walk_to; ++n) {
        stream.step();

        // The only digit an alpha step turns nonzero is the one right after
        // its carry run; runs themselves can never cross a zero digit.
        if (!watches.empty() && next_slot > 0) {
            const CarryTrace& tr = stream.last_carries();
            std::size_t bumped = tr.positions.empty()
                                     ? static_cast<std::size_t>(stream.last_term_valuation())
                                     : tr.positions.back() + 1;
            if (bumped < stream.precision()) {
                for (std::size_t s = 0; s < next_slot; ++s) {
                    if (watches[s].ok && bumped >= watches[s].lo && bumped <= watches[s].hi) {
                        watches[s].ok = false;
                    }
                }
            }
        }

        if (next_slot < records.size()) {
            if (n + 1 == next_power) {
                prev_count[next_slot] = stream.digit_count();
            } else if (n == next_power) {
                PrefixRecord& rec = records[next_slot];
                rec.r = next_slot + 3;
                rec.n = n;
                rec.v_top = stream.last_term_valuation();
                rec.v_prev = vp_factorial(n - 1, p);
                rec.jump = static_cast<std::int64_t>(stream.digit_count()) -
                           static_cast<std::int64_t>(prev_count[next_slot]);
                std::size_t run = 0;
                for (std::size_t i = static_cast<std::size_t>(rec.v_top); i-- > 0;) {
                    if (stream.digit(i) != 0) break;
                    ++run;
                }
                rec.zero_run = run;
                const std::size_t zeros = static_cast<std::size_t>(rec.r) - 2;
                watches[next_slot].lo = static_cast<std::size_t>(rec.v_top) - zeros;
                watches[next_slot].hi = static_cast<std::size_t>(rec.v_top) - 1;
                ++next_slot;
                if (next_slot < records.size()) next_power *= p;
            }
        }
    }

    for (std::size_t s = 0; s < records.size(); ++s) {
        PrefixRecord& rec = records[s];
        // Belt and braces: the watched positions must be zero in the final
        // sum itself, which at this point is the series value mod p^N.
        bool final_zero = true;
        for (std::size_t i = watches[s].lo; i <= watches[s].hi; ++i) {
            final_zero = final_zero && stream.digit(i) == 0;
        }
        rec.frozen = watches[s].ok && final_zero;
        rec.pass = rec.jump == static_cast<std::int64_t>(rec.r) - 1 &&
                   rec.zero_run >= rec.r - 2 && rec.v_top - rec.v_prev == rec.r &&
                   rec.frozen;
    }
    return records;
}

NonperiodicityReport nonperiodicity_report(u64 p, std::size_t precision,
                                           const DetectBounds& bounds) {
    NonperiodicityReport report;
    report.prime = p;
    report.precision = precision;
    report.bounds = bounds;

    const PAdicInt alpha = sum_series(SeriesKind::alpha, p, precision);
    report.detection = detect_eventual_period(alpha.digits(), p, bounds);

    u64 r_max = 0;
    for (u64 r = 3; minimal_precision_for_prefix(p, r) <= precision; ++r) r_max = r;
    report.prefix_r_max = r_max;
    if (r_max >= 3) {
        report.prefix_freeze_horizon = minimal_freeze_horizon(p, r_max);
        report.prefix_records =
            verify_power_prefix(p, r_max, precision, report.prefix_freeze_horizon);
    }
    return report;
}

namespace {

nlohmann::json to_json(const PackageRecord& rec) {
    return nlohmann::json{
        {"k", rec.k},
        {"valuation", rec.valuation},
        {"valuation_constant", rec.valuation_constant},
        {"carry_count", rec.carry_count},
        {"digit_count_end", rec.digit_count_end},
        {"digit_count_expected", rec.digit_count_expected},
        {"pass", rec.pass},
    };
}

nlohmann::json to_json(const PrefixRecord& rec) {
    return nlohmann::json{
        {"r", rec.r},
        {"n", rec.n},
        {"v_top", rec.v_top},
        {"v_prev", rec.v_prev},
        {"jump", rec.jump},
        {"zero_run", rec.zero_run},
        {"frozen", rec.frozen},
        {"pass", rec.pass},
    };
}

}  // namespace

ReportResult build_report(const ReportSpec& spec) {
    require_prime(spec.prime);
    const u64 p = spec.prime;
    const bool prefix_enabled = spec.check_prefix && spec.r_max >= 3;

    std::size_t precision = spec.precision;
    if (precision == 0) {
        precision = 8;
        if (spec.check_packages) {
            precision = std::max(precision, minimal_precision_for_packages(p, spec.k_max));
        }
        if (prefix_enabled) {
            precision = std::max(precision, minimal_precision_for_prefix(p, spec.r_max));
        }
        if (spec.check_nonperiodicity) {
            precision = std::max(precision, spec.bounds.max_preperiod +
                                                spec.bounds.min_repeats *
                                                    spec.bounds.max_period);
        }
    }

    nlohmann::json checks = nlohmann::json::array();
    bool all_pass = true;

    if (spec.check_packages) {
        const auto records = verify_packages(p, spec.k_max, precision);
        nlohmann::json rows = nlohmann::json::array();
        nlohmann::json violations = nlohmann::json::array();
        bool pass = true;
        for (const auto& rec : records) {
            rows.push_back(to_json(rec));
            if (!rec.pass) {
                pass = false;
                violations.push_back("package " + std::to_string(rec.k) + ": expected " +
                                     std::to_string(rec.digit_count_expected) +
                                     " digits and one carry, saw " +
                                     std::to_string(rec.digit_count_end) + " digits, " +
                                     std::to_string(rec.carry_count) + " carries");
            }
        }
        checks.push_back({{"name", "packages"},
                          {"params", {{"k_max", spec.k_max}, {"precision", precision}}},
                          {"pass", pass},
                          {"records", std::move(rows)},
                          {"violations", std::move(violations)}});
        all_pass = all_pass && pass;
    }

    if (prefix_enabled) {
        const u64 horizon = spec.freeze_horizon == 0
                                ? minimal_freeze_horizon(p, spec.r_max)
                                : spec.freeze_horizon;
        const auto records = verify_power_prefix(p, spec.r_max, precision, horizon);
        nlohmann::json rows = nlohmann::json::array();
        nlohmann::json violations = nlohmann::json::array();
        bool pass = true;
        for (const auto& rec : records) {
            rows.push_back(to_json(rec));
            if (!rec.pass) {
                pass = false;
                violations.push_back(
                    "r=" + std::to_string(rec.r) + ": jump " + std::to_string(rec.jump) +
                    ", zero_run " + std::to_string(rec.zero_run) +
                    (rec.frozen ? "" : ", zeros not frozen"));
            }
        }
        checks.push_back({{"name", "power_prefix"},
                          {"params",
                           {{"r_max", spec.r_max},
                            {"freeze_horizon", horizon},
                            {"precision", precision}}},
                          {"pass", pass},
                          {"records", std::move(rows)},
                          {"violations", std::move(violations)}});
        all_pass = all_pass && pass;
    }

    if (spec.check_nonperiodicity) {
        const auto report = nonperiodicity_report(p, precision, spec.bounds);
        const bool pass = report.detection.status == DetectStatus::none_within_bounds;
        nlohmann::json violations = nlohmann::json::array();
        if (report.detection.status == DetectStatus::found) {
            violations.push_back(
                "expected none_within_bounds but found a period: preperiod_len=" +
                std::to_string(report.detection.period->preperiod_len()) +
                " period_len=" + std::to_string(report.detection.period->period_len()));
        } else if (report.detection.status == DetectStatus::insufficient_data) {
            violations.push_back("insufficient data: " +
                                 std::to_string(report.detection.digits_examined) +
                                 " digits examined, need max_preperiod + min_repeats * "
                                 "max_period");
        }
        nlohmann::json detection{
            {"status", to_string(report.detection.status)},
            {"digits_examined", report.detection.digits_examined},
            {"prefix_r_max", report.prefix_r_max},
            {"prefix_records_pass",
             std::all_of(report.prefix_records.begin(), report.prefix_records.end(),
                         [](const PrefixRecord& r) { return r.pass; })},
        };
        checks.push_back({{"name", "nonperiodicity"},
                          {"params",
                           {{"max_preperiod", spec.bounds.max_preperiod},
                            {"max_period", spec.bounds.max_period},
                            {"min_repeats", spec.bounds.min_repeats},
                            {"precision", precision}}},
                          {"pass", pass},
                          {"records", nlohmann::json::array({std::move(detection)})},
                          {"violations", std::move(violations)}});
        all_pass = all_pass && pass;
    }

    nlohmann::json doc{
        {"prime", p},
        {"precision", precision},
        {"checks", std::move(checks)},
        {"tool_version", std::string(kToolVersion)},
        {"format_version", kFormatVersion},
    };
    if (spec.stamp) doc["stamp"] = *spec.stamp;

    return ReportResult{all_pass, doc.dump(2)};
}

}  // namespace padix
