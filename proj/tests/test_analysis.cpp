#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "padix/analysis.hpp"
#include "padix/errors.hpp"
#include "padix/series.hpp"
#include "padix/valuation.hpp"
#include "test_util.hpp"

using namespace padix;
using testutil::BigInt;
using testutil::pow_big;

namespace {

// Exact big-integer partial sums of the alpha series, for recomputing digit
// counts without any truncation.
std::vector<BigInt> exact_alpha_sums(std::uint64_t p, std::uint64_t n_max) {
    std::vector<BigInt> sums;
    sums.reserve(n_max + 1);
    BigInt acc = 0;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        acc += pow_big(p, vp_factorial_oracle(n, p));
        sums.push_back(acc);
    }
    return sums;
}

}  // namespace

TEST_CASE("minimal parameter formulas") {
    CHECK(minimal_precision_for_packages(3, 1) == package_valuation(1, 3) + 3);
    CHECK(minimal_precision_for_packages(2, 500) == vp_factorial(1000, 2) + 3);
    CHECK(minimal_precision_for_prefix(3, 3) == 16);   // v_3(27!) = 13
    CHECK(minimal_precision_for_prefix(2, 4) == 18);   // v_2(16!) = 15
    CHECK(minimal_freeze_horizon(3, 3) == 27);
    CHECK(minimal_freeze_horizon(2, 10) == 1024);
}

TEST_CASE("verify_packages worked records for p = 3") {
    const auto records = verify_packages(3, 3, 16);
    REQUIRE(records.size() == 4);

    CHECK(records[1].k == 1);
    CHECK(records[1].valuation == 1);
    CHECK(records[1].carry_count == 1);
    CHECK(records[1].digit_count_end == 3);  // sum "110" at n = 5
    CHECK(records[1].digit_count_expected == 3);
    CHECK(records[1].pass);

    CHECK(records[3].k == 3);
    CHECK(records[3].valuation == 4);
    CHECK(records[3].digit_count_end == 6);  // sum "101110" at n = 11
    CHECK(records[3].pass);

    for (const auto& rec : records) {
        CHECK(rec.valuation_constant);
        CHECK(rec.carry_count == 1);
        CHECK(rec.pass);
    }
}

TEST_CASE("verify_packages p=2 through k=500 against exact digit counts") {
    const std::uint64_t k_max = 500;
    const std::size_t precision = minimal_precision_for_packages(2, k_max);
    const auto records = verify_packages(2, k_max, precision);
    REQUIRE(records.size() == k_max + 1);

    const auto sums = exact_alpha_sums(2, 2 * k_max + 1);
    for (const auto& rec : records) {
        CHECK(rec.pass);
        CHECK(rec.valuation == package_valuation(rec.k, 2));
        const std::uint64_t last_n = 2 * rec.k + 1;
        CHECK(rec.digit_count_end == testutil::digit_count_big(sums[last_n], 2));
        CHECK(rec.digit_count_end == rec.valuation + 2);
    }
}

TEST_CASE("verify_packages passes across primes") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        const std::uint64_t k_max = 120;
        const auto records =
            verify_packages(p, k_max, minimal_precision_for_packages(p, k_max));
        REQUIRE(records.size() == k_max + 1);
        for (const auto& rec : records) CHECK(rec.pass);
    }
}

TEST_CASE("verify_packages rejects insufficient precision with the minimal value") {
    const std::size_t minimal = minimal_precision_for_packages(3, 50);
    try {
        verify_packages(3, 50, minimal - 1);
        FAIL("expected InsufficientParameter");
    } catch (const InsufficientParameter& e) {
        CHECK(e.parameter() == "precision");
        CHECK(e.minimal() == minimal);
    }
    // exactly the minimal precision is accepted
    CHECK(verify_packages(3, 50, minimal).size() == 51);
}

TEST_CASE("verify_power_prefix worked records") {
    // p = 3, r = 3
    const auto p3 = verify_power_prefix(3, 3, 16, 27);
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].r == 3);
    CHECK(p3[0].n == 27);
    CHECK(p3[0].v_top == 13);
    CHECK(p3[0].v_prev == 10);
    CHECK(p3[0].jump == 2);
    CHECK(p3[0].zero_run >= 1);
    CHECK(p3[0].frozen);
    CHECK(p3[0].pass);

    // p = 2, r = 4 (second record of r_max = 4)
    const auto p2 = verify_power_prefix(2, 4, 18, 16);
    REQUIRE(p2.size() == 2);
    CHECK(p2[1].r == 4);
    CHECK(p2[1].n == 16);
    CHECK(p2[1].v_top == 15);
    CHECK(p2[1].v_prev == 11);
    CHECK(p2[1].jump == 3);
    CHECK(p2[1].zero_run >= 2);
    CHECK(p2[1].pass);
}

TEST_CASE("verify_power_prefix structure against exact sums") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        const std::uint64_t r_max = p == 2 ? 8 : (p == 3 ? 5 : 3);
        const std::size_t precision = minimal_precision_for_prefix(p, r_max);
        const std::uint64_t horizon = minimal_freeze_horizon(p, r_max);
        const auto records = verify_power_prefix(p, r_max, precision, horizon);
        REQUIRE(records.size() == r_max - 2);

        const auto sums = exact_alpha_sums(p, horizon);
        for (const auto& rec : records) {
            CHECK(rec.pass);
            CHECK(rec.v_top - rec.v_prev == rec.r);
            CHECK(rec.v_top == vp_factorial(rec.n, p));
            CHECK(rec.v_prev == (rec.n - 1) / (p - 1) - rec.r);

            // the digit-count jump, recomputed exactly
            const std::int64_t exact_jump =
                static_cast<std::int64_t>(testutil::digit_count_big(sums[rec.n], p)) -
                static_cast<std::int64_t>(testutil::digit_count_big(sums[rec.n - 1], p));
            CHECK(rec.jump == exact_jump);
            CHECK(rec.jump == static_cast<std::int64_t>(rec.r) - 1);

            // S_{p^r} has digit 1 at v_top and zeros on the r-2 positions
            // below it; those zeros persist in every later partial sum
            const auto top_digits =
                testutil::digits_of_big(sums[rec.n], p, precision);
            CHECK(top_digits[rec.v_top] == 1);
            for (std::uint64_t i = rec.v_top - (rec.r - 2); i < rec.v_top; ++i) {
                CHECK(top_digits[i] == 0);
            }
            for (std::uint64_t m = rec.n; m <= horizon; ++m) {
                const auto later = testutil::digits_of_big(sums[m], p, precision);
                bool all_zero = true;
                for (std::uint64_t i = rec.v_top - (rec.r - 2); i < rec.v_top; ++i) {
                    all_zero = all_zero && later[i] == 0;
                }
                REQUIRE(all_zero);
            }
        }
    }
}

TEST_CASE("verify_power_prefix parameter validation") {
    CHECK_THROWS_AS(verify_power_prefix(3, 2, 64, 100), std::invalid_argument);

    try {
        verify_power_prefix(3, 3, 15, 27);
        FAIL("expected InsufficientParameter");
    } catch (const InsufficientParameter& e) {
        CHECK(e.parameter() == "precision");
        CHECK(e.minimal() == 16);
    }
    try {
        verify_power_prefix(3, 3, 16, 26);
        FAIL("expected InsufficientParameter");
    } catch (const InsufficientParameter& e) {
        CHECK(e.parameter() == "freeze_horizon");
        CHECK(e.minimal() == 27);
    }
}

TEST_CASE("nonperiodicity_report") {
    const DetectBounds bounds{16, 8, 3};
    const auto report = nonperiodicity_report(3, 140, bounds);
    CHECK(report.prime == 3);
    CHECK(report.precision == 140);
    CHECK(report.detection.status == DetectStatus::none_within_bounds);
    CHECK(report.detection.digits_examined == 140);
    // precision 140 admits prefix checks up to r = 5 for p = 3
    CHECK(report.prefix_r_max == 5);
    CHECK(report.prefix_freeze_horizon == 243);
    REQUIRE(report.prefix_records.size() == 3);
    for (const auto& rec : report.prefix_records) CHECK(rec.pass);
}

TEST_CASE("nonperiodicity_report labels short inputs") {
    // plenty of data for these bounds: decisive "none"
    const auto decisive = nonperiodicity_report(3, 10, DetectBounds{2, 2, 3});
    CHECK(decisive.detection.status == DetectStatus::none_within_bounds);
    CHECK(decisive.prefix_r_max == 0);  // precision 10 < 16 admits no r >= 3
    CHECK(decisive.prefix_records.empty());

    // same precision, wider bounds: too few digits to conclude anything
    const auto short_input = nonperiodicity_report(3, 10, DetectBounds{8, 8, 3});
    CHECK(short_input.detection.status == DetectStatus::insufficient_data);
}

TEST_CASE("negative control: the same detector finds rational periods") {
    const PAdicInt half = rational_to_padic(Rational(1, 2), 3, 4096);
    const DetectResult r = detect_eventual_period(half.digits(), 3, {1024, 512, 3});
    REQUIRE(r.status == DetectStatus::found);
    CHECK(r.period->preperiod_len() == 1);
    CHECK(r.period->period_len() == 1);
    CHECK(periodic_to_rational(*r.period, 3) == Rational(1, 2));
}

TEST_CASE("build_report: all checks pass and output is byte-deterministic") {
    ReportSpec spec;
    spec.prime = 3;
    spec.k_max = 20;
    spec.r_max = 3;
    spec.bounds = DetectBounds{8, 4, 3};

    const ReportResult first = build_report(spec);
    const ReportResult second = build_report(spec);
    CHECK(first.all_pass);
    CHECK(first.json == second.json);

    const auto doc = nlohmann::json::parse(first.json);
    CHECK(doc.at("prime") == 3);
    CHECK(doc.at("format_version") == 1);
    CHECK(doc.at("tool_version").get<std::string>().starts_with("padix "));
    CHECK_FALSE(doc.contains("stamp"));

    // auto precision: the documented maximum of the per-check minimal values
    const std::size_t expected_precision =
        std::max({std::size_t{8}, minimal_precision_for_packages(3, 20),
                  minimal_precision_for_prefix(3, 3),
                  spec.bounds.max_preperiod +
                      spec.bounds.min_repeats * spec.bounds.max_period});
    CHECK(doc.at("precision") == expected_precision);

    REQUIRE(doc.at("checks").size() == 3);
    CHECK(doc["checks"][0].at("name") == "packages");
    CHECK(doc["checks"][1].at("name") == "power_prefix");
    CHECK(doc["checks"][2].at("name") == "nonperiodicity");
    for (const auto& check : doc.at("checks")) {
        CHECK(check.at("pass") == true);
        CHECK(check.at("violations").empty());
        CHECK(check.contains("records"));
        CHECK(check.contains("params"));
    }

    // package records in the JSON mirror the library records
    const auto& pkg_rows = doc["checks"][0].at("records");
    REQUIRE(pkg_rows.size() == 21);
    CHECK(pkg_rows[1].at("valuation") == 1);
    CHECK(pkg_rows[1].at("digit_count_end") == 3);
    CHECK(pkg_rows[3].at("digit_count_end") == 6);

    // prefix record for r = 3
    const auto& prefix_rows = doc["checks"][1].at("records");
    REQUIRE(prefix_rows.size() == 1);
    CHECK(prefix_rows[0].at("v_top") == 13);
    CHECK(prefix_rows[0].at("v_prev") == 10);
    CHECK(prefix_rows[0].at("jump") == 2);
    CHECK(prefix_rows[0].at("frozen") == true);
}

TEST_CASE("build_report: stamp is embedded verbatim when requested") {
    ReportSpec spec;
    spec.prime = 5;
    spec.k_max = 5;
    spec.check_prefix = false;
    spec.check_nonperiodicity = false;
    spec.stamp = "2026-02-03T04:05:06Z";

    const ReportResult result = build_report(spec);
    const auto doc = nlohmann::json::parse(result.json);
    CHECK(doc.at("stamp") == "2026-02-03T04:05:06Z");
    CHECK(doc.at("checks").size() == 1);
    CHECK(result.all_pass);
}

TEST_CASE("build_report: explicit precision is honored, violations stay empty") {
    ReportSpec spec;
    spec.prime = 2;
    spec.precision = 64;
    spec.k_max = 10;
    spec.r_max = 4;
    spec.bounds = DetectBounds{8, 8, 3};

    const ReportResult result = build_report(spec);
    const auto doc = nlohmann::json::parse(result.json);
    CHECK(doc.at("precision") == 64);
    CHECK(result.all_pass);
}
