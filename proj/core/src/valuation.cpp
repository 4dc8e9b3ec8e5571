#include "padix/valuation.hpp"

#include <cassert>
#include <stdexcept>

namespace padix {

namespace {

void require_base(std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("p must be >= 2");
}

}  // namespace

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p) {
    require_base(p);
    std::uint64_t s = 0;
    while (n) {
        s += n % p;
        n /= p;
    }
    return s;
}

std::uint64_t vp_factorial(std::uint64_t n, std::uint64_t p) {
    std::uint64_t diff = n - digit_sum(n, p);  // s_p(n) <= n, no underflow
    // Legendre: (n - s_p(n)) must be a multiple of p - 1.  A remainder here
    // means a broken digit_sum, so check it every time rather than trust it.
    if (diff % (p - 1) != 0) {
        throw std::logic_error("Legendre division not exact: n=" + std::to_string(n) +
                               " p=" + std::to_string(p));
    }
    return diff / (p - 1);
}

std::uint64_t vp_factorial_oracle(std::uint64_t n, std::uint64_t p) {
    require_base(p);
    std::uint64_t total = 0;
    // pow > n terminates the loop; pow cannot overflow because we divide n.
    for (std::uint64_t q = n / p; q > 0; q /= p) total += q;
    return total;
}

std::uint64_t vp_integer(std::uint64_t n, std::uint64_t p) {
    require_base(p);
    if (n == 0) throw std::invalid_argument("v_p(0) is undefined");
    std::uint64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Package package_of(std::uint64_t n, std::uint64_t p) {
    require_base(p);
    return Package{n / p, p};
}

std::uint64_t package_valuation(std::uint64_t k, std::uint64_t p) {
    return vp_factorial(k * p, p);
}

}  // namespace padix
