#pragma once

#include <cstdint>

namespace padix {

// s_p(n): sum of the base-p digits of n.
std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p);

// v_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1); the division is
// asserted exact at runtime.  vp_factorial(0) = 0 (empty product).
std::uint64_t vp_factorial(std::uint64_t n, std::uint64_t p);

// Independent check of the same quantity via sum_{i>=1} floor(n / p^i).
std::uint64_t vp_factorial_oracle(std::uint64_t n, std::uint64_t p);

// v_p(n) for n >= 1; small helper for tests and order computations.
std::uint64_t vp_integer(std::uint64_t n, std::uint64_t p);

// The k-th package: the p consecutive indices [k*p, (k+1)*p - 1], on which
// v_p(n!) is constant.
struct Package {
    std::uint64_t index;
    std::uint64_t prime;

    std::uint64_t first() const noexcept { return index * prime; }
    std::uint64_t last() const noexcept { return (index + 1) * prime - 1; }
    std::uint64_t size() const noexcept { return prime; }

    bool operator==(const Package&) const = default;
};

Package package_of(std::uint64_t n, std::uint64_t p);

// The shared v_p(n!) of every n in package k (evaluated at n = k*p).
std::uint64_t package_valuation(std::uint64_t k, std::uint64_t p);

}  // namespace padix
