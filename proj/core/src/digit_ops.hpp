#pragma once

// Internal digit-vector kernels shared by padic_int.cpp and series.cpp.
// All vectors are LSB-first, fixed length N, every entry in [0, p).

#include <cstddef>
#include <cstdint>
#include <vector>

namespace padix::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline std::vector<u64> digits_from_u64(u64 n, u64 p, std::size_t N) {
    std::vector<u64> d(N, 0);
    for (std::size_t i = 0; i < N && n; ++i) {
        d[i] = n % p;
        n /= p;
    }
    return d;
}

inline std::size_t scan_digit_count(const std::vector<u64>& d) {
    std::size_t i = d.size();
    while (i > 0 && d[i - 1] == 0) --i;
    return i;
}

// a += b mod p^N; appends every carrying position to trace (ascending).
inline void add_into(std::vector<u64>& a, const std::vector<u64>& b, u64 p,
                     std::vector<std::size_t>& trace) {
    u64 carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 s = a[i] + b[i] + carry;  // < 2p <= 2^64 since p < 2^63
        if (s >= p) {
            s -= p;
            carry = 1;
            trace.push_back(i);
        } else {
            carry = 0;
        }
        a[i] = s;
    }
}

// a *= m mod p^N.
inline void mul_small_into(std::vector<u64>& a, u64 m, u64 p) {
    u64 carry = 0;  // bounded by m
    for (std::size_t i = 0; i < a.size(); ++i) {
        u128 s = static_cast<u128>(a[i]) * m + carry;
        a[i] = static_cast<u64>(s % p);
        carry = static_cast<u64>(s / p);
    }
}

}  // namespace padix::detail
