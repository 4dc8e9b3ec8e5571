#include "padix/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "digit_ops.hpp"
#include "padix/primality.hpp"
#include "padix/valuation.hpp"

namespace padix {

namespace {

void require_precision(std::size_t N) {
    if (N == 0) throw std::invalid_argument("precision must be >= 1");
}

std::size_t checked_precision(std::uint64_t p, std::size_t N) {
    require_prime(p);
    require_precision(N);
    return N;
}

// Untraced variant of PartialSumStream::add_power, for thread-local partial
// accumulators.
void add_power_into(std::vector<std::uint64_t>& a, std::size_t k, std::uint64_t p) {
    const std::size_t N = a.size();
    if (k >= N) return;
    std::size_t i = k;
    while (i < N && a[i] == p - 1) {
        a[i] = 0;
        ++i;
    }
    if (i < N) ++a[i];
}

}  // namespace

PartialSumStream::PartialSumStream(SeriesKind kind, std::uint64_t p, std::size_t precision)
    : kind_(kind), prime_(p), digits_(checked_precision(p, precision), 0) {
    if (kind_ == SeriesKind::factorial) {
        term_digits_ = detail::digits_from_u64(1, prime_, precision);  // 0! = 1
    }
}

bool PartialSumStream::exhausted() const {
    return vp_factorial(next_n_, prime_) >= precision();
}

void PartialSumStream::step() {
    const std::uint64_t n = next_n_;
    last_carries_.positions.clear();
    last_term_valuation_ = vp_factorial(n, prime_);
    if (kind_ == SeriesKind::alpha) {
        add_power(static_cast<std::size_t>(
            std::min<std::uint64_t>(last_term_valuation_, precision())));
    } else {
        if (n > 0) detail::mul_small_into(term_digits_, n, prime_);
        detail::add_into(digits_, term_digits_, prime_, last_carries_.positions);
        rescan_digit_count();
    }
    next_n_ = n + 1;
}

void PartialSumStream::add_power(std::size_t k) {
    const std::size_t N = digits_.size();
    if (k >= N) return;  // term vanished mod p^N
    const std::uint64_t top = prime_ - 1;
    std::size_t i = k;
    while (i < N && digits_[i] == top) {
        digits_[i] = 0;
        last_carries_.positions.push_back(i);
        ++i;
    }
    if (i < N) {
        ++digits_[i];
        digit_count_ = std::max(digit_count_, i + 1);
    } else {
        // Carry fell off the top; everything from k upward is now zero.
        rescan_digit_count();
    }
}

void PartialSumStream::rescan_digit_count() {
    digit_count_ = detail::scan_digit_count(digits_);
}

std::uint64_t PartialSumStream::last_n() const {
    if (next_n_ == 0) throw std::logic_error("no step taken yet");
    return next_n_ - 1;
}

std::uint64_t PartialSumStream::last_term_valuation() const {
    if (next_n_ == 0) throw std::logic_error("no step taken yet");
    return last_term_valuation_;
}

const CarryTrace& PartialSumStream::last_carries() const {
    if (next_n_ == 0) throw std::logic_error("no step taken yet");
    return last_carries_;
}

PAdicInt PartialSumStream::snapshot() const {
    return PAdicInt(prime_, digits_);
}

PartialSumEvent PartialSumStream::event() const {
    return PartialSumEvent{last_n(), last_term_valuation(), snapshot(), last_carries_,
                           digit_count_};
}

std::uint64_t series_stop_index(std::uint64_t p, std::size_t precision) {
    require_prime(p);
    require_precision(precision);
    // v_p(n!) is nondecreasing, so the first index with v_p(n!) >= N is a
    // plain binary-search target.
    std::uint64_t hi = 1;
    while (vp_factorial(hi, p) < precision) hi *= 2;
    std::uint64_t lo = hi / 2;  // v(lo!) < N (or lo = 0)
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (vp_factorial(mid, p) < precision ? lo : hi) = mid;
    }
    return hi;
}

PAdicInt sum_series(SeriesKind kind, std::uint64_t p, std::size_t precision,
                    unsigned threads) {
    require_prime(p);
    require_precision(precision);
    const std::uint64_t stop = series_stop_index(p, precision);

    if (kind == SeriesKind::alpha && threads > 1 && stop > 1) {
        const std::uint64_t nthreads = std::min<std::uint64_t>(threads, stop);
        std::vector<std::vector<std::uint64_t>> partials(
            nthreads, std::vector<std::uint64_t>(precision, 0));
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        const std::uint64_t chunk = (stop + nthreads - 1) / nthreads;
        for (std::uint64_t t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                const std::uint64_t a = t * chunk;
                const std::uint64_t b = std::min(stop, a + chunk);
                for (std::uint64_t n = a; n < b; ++n) {
                    std::uint64_t v = vp_factorial(n, p);
                    if (v < precision) {
                        add_power_into(partials[t], static_cast<std::size_t>(v), p);
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        // Combining is mod-p^N addition, so any order yields the same
        // digits; keep chunk order anyway.
        std::vector<std::size_t> ignore;
        for (std::uint64_t t = 1; t < nthreads; ++t) {
            ignore.clear();
            detail::add_into(partials[0], partials[t], p, ignore);
        }
        return PAdicInt::from_digits(std::move(partials[0]), p);
    }

    PartialSumStream s(kind, p, precision);
    while (s.next_n() < stop) s.step();
    return s.snapshot();
}

PAdicInt partial_sum(SeriesKind kind, std::uint64_t p, std::uint64_t n,
                     std::size_t precision) {
    require_prime(p);
    require_precision(precision);
    // Terms at and beyond the stop index vanish mod p^N, so S_n stabilizes
    // there and we never need to walk past it.
    const std::uint64_t stop = series_stop_index(p, precision);
    const std::uint64_t last = std::min(n, stop == 0 ? 0 : stop - 1);
    PartialSumStream s(kind, p, precision);
    while (s.next_n() <= last) s.step();
    return s.snapshot();
}

std::vector<PartialSumEvent> stream_partial_sums(SeriesKind kind, std::uint64_t p,
                                                 std::size_t precision,
                                                 std::uint64_t n_max) {
    PartialSumStream s(kind, p, precision);
    std::vector<PartialSumEvent> events;
    events.reserve(static_cast<std::size_t>(n_max) + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        s.step();
        events.push_back(s.event());
    }
    return events;
}

}  // namespace padix
