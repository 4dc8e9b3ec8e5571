#pragma once

#include <cstdint>

namespace padix {

/// Deterministic Miller-Rabin over the 12 known-sufficient witness bases.
/// Exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Validates a prime modulus for digit arithmetic: p must be prime and
/// p < 2^63 so that a column sum a+b+carry never overflows a 64-bit word.
/// Throws std::invalid_argument otherwise.
void require_prime(std::uint64_t p);

} // namespace padix
