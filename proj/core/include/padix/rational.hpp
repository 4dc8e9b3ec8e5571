#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padix/padic_int.hpp"

namespace padix {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction with positive denominator.  Expansion operations
// additionally require gcd(denominator, p) = 1.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt numerator, BigInt denominator);  // reduces; denominator != 0
    explicit Rational(std::int64_t n) : num_(n), den_(1) {}

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }

    bool operator==(const Rational&) const = default;

    std::string to_string() const;                 // "a/b", or "a" when b = 1
    static Rational parse(std::string_view text);  // inverse of to_string

  private:
    BigInt num_;
    BigInt den_;  // > 0, coprime to num_
};

// An eventually periodic digit stream: preperiod a_0..a_{l-1}, then
// period b_0..b_{t-1} repeating forever (all LSB-first).  Canonical form:
// the period is primitive and the preperiod minimal.
struct EventualPeriod {
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> period;  // nonempty

    std::size_t preperiod_len() const noexcept { return preperiod.size(); }
    std::size_t period_len() const noexcept { return period.size(); }

    bool operator==(const EventualPeriod&) const = default;
};

// Reduce to canonical form without changing the digit stream: shrink the
// period to its primitive block, then shorten the preperiod while its last
// digit matches the last period digit (rotating the period along).
EventualPeriod canonicalize(EventualPeriod ep);

// Digit-by-digit long division: maintain remainder r starting at a, emit
// d_i = r * b^{-1} mod p, replace r <- (r - d_i * b) / p.  The result x
// satisfies x * b == a (mod p^N).  Requires gcd(b, p) = 1.
PAdicInt rational_to_padic(const Rational& q, std::uint64_t p, std::size_t precision);

// Closed form A + P * p^l / (1 - p^t) where A and P are the preperiod and
// period values; returned reduced, denominator coprime to p.
Rational periodic_to_rational(const EventualPeriod& ep, std::uint64_t p);

enum class DetectStatus {
    found,
    none_within_bounds,
    insufficient_data,  // nothing found and too few digits to call it "none"
};

struct DetectBounds {
    std::size_t max_preperiod = 0;
    std::size_t max_period = 1;
    std::size_t min_repeats = 3;  // full period copies required in evidence
};

struct DetectResult {
    DetectStatus status = DetectStatus::insufficient_data;
    std::optional<EventualPeriod> period;  // engaged iff status == found
    std::size_t digits_examined = 0;
};

// Smallest eventual period of an LSB-first digit window: the (t, l) pair
// minimizing t first and l second with digits[i + t] = digits[i] for all
// l <= i < M - t, subject to l <= max_preperiod, t <= max_period, and at
// least min_repeats full copies of the period inside [l, M).  Returns
// insufficient_data instead of none_within_bounds when nothing was found
// and M < max_preperiod + min_repeats * max_period.
DetectResult detect_eventual_period(std::span<const std::uint64_t> digits,
                                    std::uint64_t p, const DetectBounds& bounds);

// JSON form {digits_examined, format_version, period, period_len, preperiod,
// preperiod_len, status}; keys sorted, byte-deterministic.
std::string detect_result_to_json(const DetectResult& result);

const char* to_string(DetectStatus status);

}  // namespace padix
