#include "padix/primality.hpp"

#include <stdexcept>
#include <string>

#include "digit_ops.hpp"

namespace padix {

namespace {

using detail::mulmod_u64;
using detail::powmod_u64;
using u64 = std::uint64_t;

// Witness set proven sufficient for all n < 3.3e24, which covers uint64.
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (u64 p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kWitnesses) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void require_prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 63)) {
        throw std::invalid_argument(
            "p=" + std::to_string(p) +
            " is too large: primes must be < 2^63 to keep digit sums on native words");
    }
    if (!is_prime_u64(p)) {
        throw std::invalid_argument("p=" + std::to_string(p) + " is not prime");
    }
}

} // namespace padix
