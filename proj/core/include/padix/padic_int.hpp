#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace padix {

// Positions (ascending) at which a column sum reached p during an addition,
// i.e. the positions that emitted a carry.  A carry out of the top digit is
// discarded by the mod-p^N arithmetic but still recorded here.
struct CarryTrace {
    std::vector<std::size_t> positions;

    std::size_t count() const noexcept { return positions.size(); }
    bool operator==(const CarryTrace&) const = default;
};

class PartialSumStream;

// A p-adic integer truncated to N base-p digits: a residue mod p^N.
// Digits are stored least-significant first (digits[i] is the coefficient
// of p^i); display is most-significant first.  Values are immutable and
// safe to share across threads.
class PAdicInt {
  public:
    // Base-p digits of n mod p^N.  Values >= p^N reduce silently; that is
    // the intended mod-p^N semantics, not an error.
    static PAdicInt from_natural(std::uint64_t n, std::uint64_t p, std::size_t precision);
    static PAdicInt zero(std::uint64_t p, std::size_t precision);
    static PAdicInt one(std::uint64_t p, std::size_t precision);
    // Digit 1 at position k, or the zero element when k >= precision.
    static PAdicInt power_of_p(std::size_t k, std::uint64_t p, std::size_t precision);
    // Adopts an LSB-first digit vector; precision = digits.size().
    static PAdicInt from_digits(std::vector<std::uint64_t> digits_lsb, std::uint64_t p);

    std::uint64_t prime() const noexcept { return prime_; }
    std::size_t precision() const noexcept { return digits_.size(); }
    const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
    std::uint64_t digit(std::size_t i) const { return digits_.at(i); }
    bool is_zero() const noexcept;

    // 1 + index of the highest nonzero digit; 0 for the zero element.
    std::size_t digit_count() const noexcept;

    bool operator==(const PAdicInt&) const = default;

  private:
    PAdicInt(std::uint64_t p, std::vector<std::uint64_t> digits)
        : prime_(p), digits_(std::move(digits)) {}

    friend class PartialSumStream;

    std::uint64_t prime_;
    std::vector<std::uint64_t> digits_;  // LSB-first, each in [0, prime_)
};

struct AddResult {
    PAdicInt value;
    CarryTrace trace;
};

// Schoolbook base-p addition mod p^N with a full carry log.
// Operands must share prime and precision (std::invalid_argument otherwise).
AddResult add(const PAdicInt& a, const PAdicInt& b);
PAdicInt operator+(const PAdicInt& a, const PAdicInt& b);

// a * m mod p^N for a natural m.
PAdicInt mul_by_natural(const PAdicInt& a, std::uint64_t m);

enum class RenderMode {
    trimmed,      // drop leading zeros; the zero element renders as "0"
    fixed_width,  // exactly `precision` digits, zero-padded on the left
};

enum class RenderStyle {
    compact,  // one character per digit, 0-9 then a-z; requires p <= 36
    list,     // comma-separated decimal digits, any p
};

// MSD-first textual form.
std::string render(const PAdicInt& a, RenderMode mode, RenderStyle style);

// Inverse of render: MSD-first text -> value.  Accepts up to `precision`
// digits and zero-fills the missing high positions.
PAdicInt parse_digits(std::string_view text, std::uint64_t p, std::size_t precision,
                      RenderStyle style);

// Digit-file format: line 1 "p=<prime> order=msd", line 2 the full
// fixed-width digit string (compact when p <= 36, comma list otherwise).
void write_digit_file(const PAdicInt& a, std::ostream& out);
void write_digit_file(const PAdicInt& a, const std::filesystem::path& path);
PAdicInt read_digit_file(std::istream& in);
PAdicInt read_digit_file(const std::filesystem::path& path);

}  // namespace padix
