#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "padix/padic_int.hpp"

namespace padix {

enum class SeriesKind {
    alpha,      // term(n) = p^{v_p(n!)}
    factorial,  // term(n) = n!
};

struct PartialSumEvent {
    std::uint64_t n;
    std::uint64_t term_valuation;  // v_p of term(n)
    PAdicInt sum;                  // S_n = sum_{m<=n} term(m) mod p^N
    CarryTrace carries;            // carries of the addition S_{n-1} + term(n)
    std::size_t digit_count;       // digit count of S_n
};

// Sequential partial-sum engine.  Keeps the running sum in place, so one
// step costs O(1) amortized for the alpha series (a carry run) and O(N)
// for the factorial series (one short multiply plus one addition).
// Carry traces depend on the running-sum order, hence strictly sequential.
class PartialSumStream {
  public:
    PartialSumStream(SeriesKind kind, std::uint64_t p, std::size_t precision);

    SeriesKind kind() const noexcept { return kind_; }
    std::uint64_t prime() const noexcept { return prime_; }
    std::size_t precision() const noexcept { return digits_.size(); }

    // Index of the term the next step() adds.
    std::uint64_t next_n() const noexcept { return next_n_; }

    // True once v_p(term(next_n)) >= precision: every remaining term is
    // 0 mod p^N, so the running sum is final.  Stepping past this point is
    // allowed and is a no-op on the value.
    bool exhausted() const;

    // Add term(next_n) to the running sum.
    void step();

    // Observers of the last step; valid after at least one step().
    std::uint64_t last_n() const;
    std::uint64_t last_term_valuation() const;
    const CarryTrace& last_carries() const;

    // Observers of the running sum (valid from construction; the sum is 0
    // before the first step).
    std::size_t digit_count() const noexcept { return digit_count_; }
    std::uint64_t digit(std::size_t i) const { return digits_.at(i); }
    const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
    PAdicInt snapshot() const;       // O(N) copy of the running sum
    PartialSumEvent event() const;   // record of the last step (with snapshot)

  private:
    void add_power(std::size_t k);
    void rescan_digit_count();

    SeriesKind kind_;
    std::uint64_t prime_;
    std::vector<std::uint64_t> digits_;      // running sum, LSB-first
    std::size_t digit_count_ = 0;
    std::uint64_t next_n_ = 0;
    std::uint64_t last_term_valuation_ = 0;
    CarryTrace last_carries_;
    std::vector<std::uint64_t> term_digits_; // factorial kind: n! mod p^N
};

// First n with v_p(n!) >= N.  Both series have term valuation v_p(n!), so
// from this index on every term vanishes mod p^N (valuations are
// nondecreasing in n).
std::uint64_t series_stop_index(std::uint64_t p, std::size_t precision);

// The full series limit mod p^N, exactly.  `threads` > 1 splits the index
// range of the alpha series into chunks combined in a fixed order, so the
// result is deterministic and independent of the split; the factorial
// series is summed sequentially regardless (its terms are built
// incrementally).
PAdicInt sum_series(SeriesKind kind, std::uint64_t p, std::size_t precision,
                    unsigned threads = 1);

// S_n mod p^N.
PAdicInt partial_sum(SeriesKind kind, std::uint64_t p, std::uint64_t n,
                     std::size_t precision);

// Events for n = 0..n_max.  Materializes one snapshot per event (O(n_max*N)
// memory); for long traversals walk a PartialSumStream instead.
std::vector<PartialSumEvent> stream_partial_sums(SeriesKind kind, std::uint64_t p,
                                                 std::size_t precision,
                                                 std::uint64_t n_max);

}  // namespace padix
