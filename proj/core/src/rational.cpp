#include "padix/rational.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "digit_ops.hpp"
#include "padix/primality.hpp"
#include "padix/version.hpp"

namespace padix {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw std::invalid_argument("denominator must be nonzero");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Rational Rational::parse(std::string_view text) {
    auto piece = [](std::string_view s) -> BigInt {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        if (s.empty()) throw std::invalid_argument("empty rational component");
        try {
            return BigInt(std::string(s));
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid integer '" + std::string(s) + "'");
        }
    };
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(piece(text), 1);
    return Rational(piece(text.substr(0, slash)), piece(text.substr(slash + 1)));
}

EventualPeriod canonicalize(EventualPeriod ep) {
    if (ep.period.empty()) throw std::invalid_argument("period must be nonempty");

    // Shrink to the primitive block: the smallest divisor d of t such that
    // the period is d-periodic.
    const std::size_t t = ep.period.size();
    for (std::size_t d = 1; d < t; ++d) {
        if (t % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < t && repeats; ++i) {
            repeats = ep.period[i] == ep.period[i - d];
        }
        if (repeats) {
            ep.period.resize(d);
            break;
        }
    }

    // Minimal preperiod: while its last digit matches the last period digit
    // the boundary can move left (rotating the period keeps the stream).
    while (!ep.preperiod.empty() && ep.preperiod.back() == ep.period.back()) {
        ep.preperiod.pop_back();
        std::rotate(ep.period.rbegin(), ep.period.rbegin() + 1, ep.period.rend());
    }
    return ep;
}

PAdicInt rational_to_padic(const Rational& q, std::uint64_t p, std::size_t precision) {
    require_prime(p);
    if (precision == 0) throw std::invalid_argument("precision must be >= 1");
    const BigInt& b = q.denominator();
    const BigInt pbig(p);
    if (b % pbig == 0) {
        throw std::invalid_argument("denominator " + b.str() + " is divisible by p=" +
                                    std::to_string(p) + "; not a p-adic integer");
    }

    const std::uint64_t b_mod_p = static_cast<std::uint64_t>(b % pbig);
    const std::uint64_t b_inv = detail::powmod_u64(b_mod_p, p - 2, p);  // Fermat

    std::vector<std::uint64_t> digits(precision, 0);
    BigInt r = q.numerator();
    for (std::size_t i = 0; i < precision; ++i) {
        BigInt rm = r % pbig;
        if (rm < 0) rm += pbig;
        const std::uint64_t d =
            detail::mulmod_u64(static_cast<std::uint64_t>(rm), b_inv, p);
        digits[i] = d;
        r -= d * b;
        // d was chosen so that r is now divisible by p.
        if (r % pbig != 0) throw std::logic_error("long-division step not exact");
        r /= pbig;
    }
    return PAdicInt::from_digits(std::move(digits), p);
}

Rational periodic_to_rational(const EventualPeriod& ep, std::uint64_t p) {
    require_prime(p);
    if (ep.period.empty()) throw std::invalid_argument("period must be nonempty");
    auto check = [p](const std::vector<std::uint64_t>& v) {
        for (std::uint64_t d : v) {
            if (d >= p) {
                throw std::invalid_argument("digit " + std::to_string(d) +
                                            " out of range for p=" + std::to_string(p));
            }
        }
    };
    check(ep.preperiod);
    check(ep.period);

    const BigInt pbig(p);
    auto value_of = [&pbig](const std::vector<std::uint64_t>& v) {
        BigInt acc = 0;
        for (std::size_t i = v.size(); i-- > 0;) acc = acc * pbig + v[i];
        return acc;
    };
    const BigInt A = value_of(ep.preperiod);
    const BigInt P = value_of(ep.period);
    const BigInt pt = mp::pow(pbig, static_cast<unsigned>(ep.period.size()));
    const BigInt pl = mp::pow(pbig, static_cast<unsigned>(ep.preperiod.size()));
    // A + p^l * P / (1 - p^t), written over the positive denominator p^t - 1.
    return Rational(A * (pt - 1) - pl * P, pt - 1);
}

namespace {

// Z-array: z[i] = length of the longest common prefix of v and v[i:].
std::vector<std::size_t> z_array(const std::vector<std::uint64_t>& v) {
    const std::size_t M = v.size();
    std::vector<std::size_t> z(M, 0);
    if (M == 0) return z;
    z[0] = M;
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < M; ++i) {
        if (i < r) z[i] = std::min(r - i, z[i - l]);
        while (i + z[i] < M && v[z[i]] == v[i + z[i]]) ++z[i];
        if (i + z[i] > r) {
            l = i;
            r = i + z[i];
        }
    }
    return z;
}

}  // namespace

DetectResult detect_eventual_period(std::span<const std::uint64_t> digits,
                                    std::uint64_t p, const DetectBounds& bounds) {
    require_prime(p);
    if (bounds.max_period == 0) throw std::invalid_argument("max_period must be >= 1");
    if (bounds.min_repeats == 0) throw std::invalid_argument("min_repeats must be >= 1");
    for (std::uint64_t d : digits) {
        if (d >= p) {
            throw std::invalid_argument("digit " + std::to_string(d) +
                                        " out of range for p=" + std::to_string(p));
        }
    }

    const std::size_t M = digits.size();
    DetectResult result;
    result.digits_examined = M;

    if (M > 0) {
        // Work on the reversed window E: a shift-t self-match of the digit
        // tail becomes a prefix match of E, so one Z-array answers every t.
        // For shift t, digits[i] = digits[i+t] holds for all i >= l exactly
        // when l >= M - t - Z_E[t].
        std::vector<std::uint64_t> rev(digits.rbegin(), digits.rend());
        const std::vector<std::size_t> z = z_array(rev);
        const std::size_t t_cap = std::min(bounds.max_period, M - 1);
        for (std::size_t t = 1; t <= t_cap; ++t) {
            const std::size_t matched = z[t];
            const std::size_t l = M - t > matched ? M - t - matched : 0;
            if (l > bounds.max_preperiod) continue;
            // min_repeats full copies of the period must fit in [l, M).
            if (static_cast<detail::u128>(bounds.min_repeats) * t > M - l) continue;
            result.status = DetectStatus::found;
            result.period = EventualPeriod{
                {digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(l)},
                {digits.begin() + static_cast<std::ptrdiff_t>(l),
                 digits.begin() + static_cast<std::ptrdiff_t>(l + t)}};
            return result;
        }
    }

    const detail::u128 recommended =
        static_cast<detail::u128>(bounds.max_preperiod) +
        static_cast<detail::u128>(bounds.min_repeats) * bounds.max_period;
    result.status = static_cast<detail::u128>(M) >= recommended
                        ? DetectStatus::none_within_bounds
                        : DetectStatus::insufficient_data;
    return result;
}

const char* to_string(DetectStatus status) {
    switch (status) {
        case DetectStatus::found: return "found";
        case DetectStatus::none_within_bounds: return "none_within_bounds";
        case DetectStatus::insufficient_data: return "insufficient_data";
    }
    return "unknown";
}

std::string detect_result_to_json(const DetectResult& result) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["status"] = to_string(result.status);
    j["digits_examined"] = result.digits_examined;
    if (result.period) {
        j["preperiod_len"] = result.period->preperiod_len();
        j["period_len"] = result.period->period_len();
        j["preperiod"] = result.period->preperiod;
        j["period"] = result.period->period;
    } else {
        j["preperiod_len"] = nullptr;
        j["period_len"] = nullptr;
        j["preperiod"] = nullptr;
        j["period"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace padix
